//! The binary symplectic group: validated matrices, block views, sampling, counting.

mod count;
mod enumerate;
mod rank;
mod sample;

use std::fmt;

use crate::error::{mismatch, Error, Result};
use crate::gf2::{BitMatrix, BitVector, SymplecticForm};

pub use count::{count_subspaces, group_order, group_order_window, ExactCount};
pub use enumerate::enumerate_group;
pub use rank::{
    block_rank_histogram, kernel_hit_bound, product_rank_experiment, product_rank_tail_bound,
    single_rank_tail_bound, tail_rows, ProductRankReport, TailRow,
};
pub use sample::sample_uniform;

/// A `2n x 2n` matrix known to satisfy `S^T J S = J`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymplecticMatrix {
    n: usize,
    m: BitMatrix,
}

/// Selects one of the four half-size blocks of `(A B; C D)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum, serde::Serialize)]
pub enum Block {
    A,
    B,
    C,
    D,
}

/// The split `(A B; C D)` of a matrix acting on `V ⊕ V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockView {
    pub a: BitMatrix,
    pub b: BitMatrix,
    pub c: BitMatrix,
    pub d: BitMatrix,
}

impl BlockView {
    #[must_use]
    pub fn get(&self, which: Block) -> &BitMatrix {
        match which {
            Block::A => &self.a,
            Block::B => &self.b,
            Block::C => &self.c,
            Block::D => &self.d,
        }
    }

    /// Reassembles `(A B; C D)`.
    #[must_use]
    pub fn assemble(&self) -> BitMatrix {
        let h = self.a.rows();
        let mut m = BitMatrix::zeros(2 * h, 2 * h);
        m.place(0, 0, &self.a);
        m.place(0, h, &self.b);
        m.place(h, 0, &self.c);
        m.place(h, h, &self.d);
        m
    }
}

impl SymplecticMatrix {
    /// Validates `m` against the form on `Z_2^{rows}`.
    pub fn new(m: BitMatrix) -> Result<Self> {
        if !m.is_square() || !m.rows().is_multiple_of(2) {
            return Err(mismatch(
                "SymplecticMatrix::new",
                "even square",
                format!("{}x{}", m.rows(), m.cols()),
            ));
        }
        let n = m.rows() / 2;
        if !SymplecticForm::new(n).is_symplectic(&m)? {
            return Err(Error::NotSymplectic);
        }
        Ok(Self { n, m })
    }

    pub(crate) fn new_unchecked(m: BitMatrix) -> Self {
        debug_assert!(SymplecticForm::new(m.rows() / 2).is_symplectic(&m).unwrap_or(false));
        Self { n: m.rows() / 2, m }
    }

    pub fn from_row_strings(rows: &[&str]) -> Result<Self> {
        Self::new(BitMatrix::from_row_strings(rows)?)
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            m: BitMatrix::identity(2 * n),
        }
    }

    /// Number of mode pairs.
    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        2 * self.n
    }

    #[must_use]
    pub fn matrix(&self) -> &BitMatrix {
        &self.m
    }

    #[must_use]
    pub fn into_matrix(self) -> BitMatrix {
        self.m
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(Self::new_unchecked(self.m.mat_mul(&other.m)?))
    }

    /// `S^{-1} = J S^T J`.
    #[must_use]
    pub fn inverse(&self) -> Self {
        let j = SymplecticForm::new(self.n).matrix();
        Self::new_unchecked(&(&j * &self.m.transpose()) * &j)
    }

    pub fn apply(&self, u: &BitVector) -> Result<BitVector> {
        self.m.mul_vec(u)
    }

    #[must_use]
    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::new_unchecked(self.m.direct_sum(&other.m))
    }

    /// Splits into `(A B; C D)` at the midpoint; needs an even number of mode pairs.
    pub fn blocks(&self) -> Result<BlockView> {
        if !self.n.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "cannot split {} mode pairs into two equal halves",
                self.n
            )));
        }
        let h = self.n;
        Ok(BlockView {
            a: self.m.submatrix(0, 0, h, h),
            b: self.m.submatrix(0, h, h, h),
            c: self.m.submatrix(h, 0, h, h),
            d: self.m.submatrix(h, h, h, h),
        })
    }

    pub fn from_blocks(view: &BlockView) -> Result<Self> {
        Self::new(view.assemble())
    }

    /// Conjugation `M S M` by the half swap `M = (0 I; I 0)`, giving `(D C; B A)`.
    pub fn block_swap(&self) -> Result<Self> {
        let v = self.blocks()?;
        Ok(Self::new_unchecked(
            BlockView {
                a: v.d,
                b: v.c,
                c: v.b,
                d: v.a,
            }
            .assemble(),
        ))
    }
}

/// The half swap `M = (0 I; I 0)` on `Z_2^{2h} ⊕ Z_2^{2h}`; itself symplectic.
#[must_use]
pub fn half_swap(h: usize) -> SymplecticMatrix {
    let mut m = BitMatrix::zeros(2 * h, 2 * h);
    m.place(0, h, &BitMatrix::identity(h));
    m.place(h, 0, &BitMatrix::identity(h));
    SymplecticMatrix::new_unchecked(m)
}

impl fmt::Debug for SymplecticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Symplectic{:?}", self.m)
    }
}

impl fmt::Display for SymplecticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.m, f)
    }
}
