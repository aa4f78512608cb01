use std::fmt;
use std::ops::Mul;

use rand::Rng;

use super::vector::{tail_mask, words_for, BitVector, WORD};
use crate::error::{mismatch, Error, Result};

/// Dense GF(2) matrix stored row-major, each row packed into `stride` words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn from_rows(rows: &[BitVector]) -> Result<Self> {
        let cols = rows.first().map_or(0, BitVector::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(mismatch("from_rows", cols, r.len()));
            }
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        Ok(m)
    }

    pub fn from_columns(cols: &[BitVector]) -> Result<Self> {
        Ok(Self::from_rows(cols)?.transpose())
    }

    /// Parses rows written as `0`/`1` strings.
    pub fn from_row_strings(rows: &[&str]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| BitVector::parse_bits(r.trim()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(&rows)
    }

    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        let mut m = Self::zeros(rows, cols);
        let mask = tail_mask(cols);
        for i in 0..rows {
            let row = m.row_words_mut(i);
            for w in row.iter_mut() {
                *w = rng.gen();
            }
            if let Some(last) = row.last_mut() {
                *last &= mask;
            }
        }
        m
    }

    #[must_use]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[must_use]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        (self.data[i * self.stride + j / WORD] >> (j % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        let w = &mut self.data[i * self.stride + j / WORD];
        let mask = 1u64 << (j % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[must_use]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[must_use]
    pub fn row(&self, i: usize) -> BitVector {
        BitVector::from_words(self.cols, self.row_words(i).to_vec())
    }

    #[must_use]
    pub fn column(&self, j: usize) -> BitVector {
        BitVector::from_bits((0..self.rows).map(|i| self.get(i, j)))
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        let s = self.stride;
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&mut lo[dst * s..(dst + 1) * s], &hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..(src + 1) * s])
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x ^= y;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for k in 0..self.stride {
                self.data.swap(a * self.stride + k, b * self.stride + k);
            }
        }
    }

    #[must_use]
    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row(i).ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Checked product; errors when `self.cols != other.rows`.
    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(mismatch(
                "mat_mul",
                format!("{}x{}", self.rows, self.cols),
                format!("{}x{}", other.rows, other.cols),
            ));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in BitVector::from_words(self.cols, self.row_words(i).to_vec()).ones() {
                let src = other.row_words(k);
                let dst = &mut out.data[i * out.stride..(i + 1) * out.stride];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d ^= s;
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `M v`.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.cols {
            return Err(mismatch("mul_vec", self.cols, v.len()));
        }
        Ok(BitVector::from_bits((0..self.rows).map(|i| {
            self.row_words(i)
                .iter()
                .zip(v.words())
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
                & 1
                == 1
        })))
    }

    #[must_use]
    pub fn pow(&self, mut k: u64) -> Self {
        assert!(self.is_square(), "pow of a non-square matrix");
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Forward elimination in place. Pivot columns are scanned left to right; the pivot
    /// row is the lowest-index candidate. With `reduce` the result is fully row-reduced.
    /// Returns the pivot columns.
    fn eliminate(&mut self, reduce: bool) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(r, p);
            let start = if reduce { 0 } else { r + 1 };
            for i in start..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_rows(i, r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.clone().eliminate(false).len()
    }

    /// Basis of `{u : M u = 0}`, one vector per free column in increasing order.
    #[must_use]
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let mut m = self.clone();
        let pivots = m.eliminate(true);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVector::zeros(self.cols);
                v.set(f, true);
                for (r, &p) in pivots.iter().enumerate() {
                    if m.get(r, f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Inverse by Gauss-Jordan elimination; `None` when singular or non-square.
    #[must_use]
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in self.row(i).ones() {
                aug.set(i, j, true);
            }
            aug.set(i, n + i, true);
        }
        let pivots = aug.eliminate(true);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(aug.submatrix(0, n, n, n))
    }

    #[must_use]
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "submatrix out of range");
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            let row = self.row(r0 + i).slice(c0, cols);
            out.row_words_mut(i).copy_from_slice(row.words());
        }
        out
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn place(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(
            r0 + block.rows <= self.rows && c0 + block.cols <= self.cols,
            "block does not fit"
        );
        for i in 0..block.rows {
            let mut row = self.row(r0 + i);
            row.write_slice(c0, &block.row(i));
            self.row_words_mut(r0 + i).copy_from_slice(row.words());
        }
    }

    #[must_use]
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        out.place(0, 0, self);
        out.place(self.rows, self.cols, other);
        out
    }

    /// Text form: a `rows cols` header followed by one `0`/`1` line per row.
    #[must_use]
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            s.push_str(&self.row(i).to_string());
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header {header:?}"))))
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(Error::Parse(format!("header must be `rows cols`, got {header:?}")));
        };
        let body: Vec<&str> = lines.collect();
        if body.len() != rows {
            return Err(Error::Parse(format!("expected {rows} rows, found {}", body.len())));
        }
        let mut m = Self::zeros(rows, cols);
        for (i, line) in body.iter().enumerate() {
            let row = BitVector::parse_bits(line)?;
            if row.len() != cols {
                return Err(Error::Parse(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            m.row_words_mut(i).copy_from_slice(row.words());
        }
        Ok(m)
    }
}

impl Mul for &BitMatrix {
    type Output = BitMatrix;

    /// Panics on a dimension mismatch; use [`BitMatrix::mat_mul`] for the checked form.
    fn mul(self, rhs: &BitMatrix) -> BitMatrix {
        self.mat_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {}", self.row(i))?;
        }
        Ok(())
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Checked product `A B`.
pub fn mat_mul(a: &BitMatrix, b: &BitMatrix) -> Result<BitMatrix> {
    a.mat_mul(b)
}

#[must_use]
pub fn rank(m: &BitMatrix) -> usize {
    m.rank()
}

#[must_use]
pub fn kernel_basis(m: &BitMatrix) -> Vec<BitVector> {
    m.kernel_basis()
}
