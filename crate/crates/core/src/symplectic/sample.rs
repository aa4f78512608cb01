use rand::Rng;

use super::SymplecticMatrix;
use crate::gf2::{form_words, BitMatrix, BitVector};

/// Sum of the basis vectors selected by `coeffs`.
fn combine(basis: &[BitVector], coeffs: &BitVector, dim: usize) -> BitVector {
    let mut v = BitVector::zeros(dim);
    for k in coeffs.ones() {
        v ^= &basis[k];
    }
    v
}

/// Uniform element of `Sp(2n, Z_2)`.
///
/// Columns are produced in pairs `(u_i, v_i)`. A basis of the symplectic complement `W`
/// of the pairs chosen so far is carried along: `u_i` is a uniform nonzero vector of `W`
/// and `v_i` is uniform among vectors of `W` with `<u_i, v_i> = 1`. Both choices are made
/// by drawing coefficient vectors directly from their solution sets, so no candidate is
/// ever discarded except the all-zero coefficient vector for very wide complements.
pub fn sample_uniform<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SymplecticMatrix {
    assert!(n >= 1, "the symplectic group needs n >= 1");
    let dim = 2 * n;
    let mut basis: Vec<BitVector> = (0..dim).map(|i| BitVector::unit(dim, i)).collect();
    let mut columns = Vec::with_capacity(dim);
    while !basis.is_empty() {
        let m = basis.len();
        let a = BitVector::random_nonzero(m, rng);
        let u = combine(&basis, &a, dim);
        let pairing: Vec<bool> = basis.iter().map(|b| form_words(u.words(), b.words())).collect();

        let mut c = BitVector::random(m, rng);
        let parity = c.ones().filter(|&k| pairing[k]).count() % 2 == 1;
        if !parity {
            let k = pairing.iter().position(|&p| p).expect("form is nondegenerate on W");
            c.flip(k);
        }
        let v = combine(&basis, &c, dim);

        // Drop two basis vectors whose projections are dependent: u and v + c_j u both
        // vanish under the projection onto the complement of span{u, v}.
        let j = a.ones().next().expect("a is nonzero");
        let mut c2 = c.clone();
        if c.get(j) {
            c2 ^= &a;
        }
        let l = c2.ones().next().expect("v is independent of u");
        basis = basis
            .into_iter()
            .enumerate()
            .filter(|&(k, _)| k != j && k != l)
            .map(|(_, mut b)| {
                let bu = form_words(b.words(), u.words());
                let bv = form_words(b.words(), v.words());
                if bv {
                    b ^= &u;
                }
                if bu {
                    b ^= &v;
                }
                b
            })
            .collect();
        columns.push(u);
        columns.push(v);
    }
    let m = BitMatrix::from_columns(&columns).expect("columns share a length");
    SymplecticMatrix::new_unchecked(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::SymplecticForm;
    use crate::montecarlo::rng_from_seed;

    #[test]
    fn outputs_are_symplectic() {
        let mut rng = rng_from_seed(3);
        for n in 1..=12 {
            for _ in 0..20 {
                let s = sample_uniform(n, &mut rng);
                assert!(SymplecticForm::new(n).is_symplectic(s.matrix()).unwrap());
            }
        }
        let s = sample_uniform(40, &mut rng);
        assert!(SymplecticForm::new(40).is_symplectic(s.matrix()).unwrap());
    }

    #[test]
    fn seed_reproduces() {
        let a = sample_uniform(4, &mut rng_from_seed(42));
        let b = sample_uniform(4, &mut rng_from_seed(42));
        assert_eq!(a, b);
    }
}
