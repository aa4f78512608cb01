//! Bit-packed linear algebra over GF(2) and the symplectic form.

mod form;
mod matrix;
mod vector;

pub use form::{form_of, is_symplectic, symp_form, SymplecticForm};
pub(crate) use form::form_words;
pub use matrix::{kernel_basis, mat_mul, rank, BitMatrix};
pub use vector::BitVector;
