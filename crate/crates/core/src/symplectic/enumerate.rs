use super::SymplecticMatrix;
use crate::gf2::{form_words, BitMatrix, BitVector};

fn form(a: u64, b: u64) -> bool {
    form_words(&[a], &[b])
}

fn extend(dim: usize, cols: &mut Vec<u64>, out: &mut Vec<SymplecticMatrix>) {
    if cols.len() == dim {
        let vs: Vec<BitVector> = cols.iter().map(|&c| BitVector::from_u64(dim, c)).collect();
        let m = BitMatrix::from_columns(&vs).expect("equal lengths");
        out.push(SymplecticMatrix::new_unchecked(m));
        return;
    }
    let pos = cols.len();
    for x in 1..(1u64 << dim) {
        let ok = cols.iter().enumerate().all(|(i, &c)| {
            let want = pos % 2 == 1 && i == pos - 1;
            form(c, x) == want
        });
        if ok {
            cols.push(x);
            extend(dim, cols, out);
            cols.pop();
        }
    }
}

/// Every element of `Sp(2n, Z_2)`, built by extending partial symplectic bases column
/// by column. Intended for `n <= 2`; the group has 1451520 elements at `n = 3`.
#[must_use]
pub fn enumerate_group(n: usize) -> Vec<SymplecticMatrix> {
    assert!((1..=3).contains(&n), "enumeration is limited to n <= 3");
    let mut out = Vec::new();
    extend(2 * n, &mut Vec::new(), &mut out);
    out
}
