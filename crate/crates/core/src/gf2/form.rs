use super::matrix::BitMatrix;
use super::vector::BitVector;
use crate::error::{mismatch, Result};

const EVEN_BITS: u64 = 0x5555_5555_5555_5555;

/// Exchanges bits `2i` and `2i+1` of every pair, i.e. multiplies by `J`.
#[inline]
pub(crate) fn swap_pairs(w: u64) -> u64 {
    ((w & EVEN_BITS) << 1) | ((w >> 1) & EVEN_BITS)
}

/// `<u, v> = u^T J v` on raw words of equal length.
#[inline]
pub(crate) fn form_words(u: &[u64], v: &[u64]) -> bool {
    u.iter()
        .zip(v)
        .fold(0u32, |acc, (a, b)| acc ^ (a & swap_pairs(*b)).count_ones())
        & 1
        == 1
}

/// The symplectic form on `Z_2^{2n}` with coordinates ordered `(q1, p1, q2, p2, ...)`,
/// so that `J` is block diagonal with `2x2` antidiagonal blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticForm {
    n: usize,
}

impl SymplecticForm {
    #[must_use]
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        2 * self.n
    }

    #[must_use]
    pub fn matrix(&self) -> BitMatrix {
        BitMatrix::from_fn(self.dim(), self.dim(), |i, j| i ^ 1 == j)
    }

    pub fn eval(&self, u: &BitVector, v: &BitVector) -> Result<bool> {
        if u.len() != self.dim() || v.len() != self.dim() {
            return Err(mismatch(
                "symp_form",
                self.dim(),
                format!("{} and {}", u.len(), v.len()),
            ));
        }
        Ok(form_words(u.words(), v.words()))
    }

    /// True iff `S^T J S = J`.
    pub fn is_symplectic(&self, s: &BitMatrix) -> Result<bool> {
        if s.rows() != self.dim() || s.cols() != self.dim() {
            return Err(mismatch(
                "is_symplectic",
                format!("{0}x{0}", self.dim()),
                format!("{}x{}", s.rows(), s.cols()),
            ));
        }
        let st = s.transpose();
        let cols: Vec<BitVector> = (0..self.dim()).map(|j| st.row(j)).collect();
        for i in 0..self.dim() {
            for j in i..self.dim() {
                if form_words(cols[i].words(), cols[j].words()) != (i ^ 1 == j) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `<u, v> = u^T J v` for the form on `Z_2^{2n}`.
pub fn symp_form(u: &BitVector, v: &BitVector, form: SymplecticForm) -> Result<bool> {
    form.eval(u, v)
}

pub fn is_symplectic(s: &BitMatrix, form: SymplecticForm) -> Result<bool> {
    form.is_symplectic(s)
}

/// Symplectic form on vectors of any even length, without a size check.
#[must_use]
pub fn form_of(u: &BitVector, v: &BitVector) -> bool {
    assert_eq!(u.len(), v.len(), "form of vectors with different lengths");
    form_words(u.words(), v.words())
}
