mod common;

use floquet_clifford::chain::*;
use floquet_clifford::gf2::{BitMatrix, BitVector, SymplecticForm};
use floquet_clifford::montecarlo::{rng_from_seed, sample_counts, within_sigmas, McConfig};
use proptest::prelude::*;

fn geometry(l: usize, n: usize) -> ChainGeometry {
    ChainGeometry::new(l, n).unwrap()
}

#[test]
fn geometry_rejects_odd_or_empty() {
    assert!(ChainGeometry::new(3, 1).is_err());
    assert!(ChainGeometry::new(0, 1).is_err());
    assert!(ChainGeometry::new(4, 0).is_err());
    assert_eq!(geometry(6, 2).dim(), 24);
}

#[test]
fn disorder_is_symplectic_and_reproducible() {
    let g = geometry(8, 2);
    let a = build_disorder(g, &mut rng_from_seed(5));
    let b = build_disorder(g, &mut rng_from_seed(5));
    assert_eq!(a.gates().len(), 8);
    assert_eq!(a, b);
    let f = SymplecticForm::new(4);
    assert!(a.gates().iter().all(|s| f.is_symplectic(s.matrix()).unwrap()));
    let restored = DisorderRealization::from_json(&a.to_json(Some(5))).unwrap();
    assert_eq!(restored, a);
}

#[test]
fn l2_gates_are_uniform() {
    let group = common::brute_force_group(4);
    let g = geometry(2, 1);
    let counts = sample_counts(&McConfig::new(100_000, 31), |rng| common::to_rows(build_disorder(g, rng).gate(0)));
    assert_eq!(counts.distinct(), 720);
    for s in &group {
        assert!(within_sigmas(counts.frequency(s), 1.0 / 720.0, counts.total()));
    }
}

#[test]
fn identity_gates_give_identity() {
    let r = DisorderRealization::identity(geometry(6, 2));
    assert_eq!(r.half_step_matrix(Parity::Even), BitMatrix::identity(24));
    assert_eq!(r.half_step_matrix(Parity::Odd), BitMatrix::identity(24));
    let u = PhaseVector::from_pauli(r.geometry(), "XY|ZI|II|YY|IX|ZZ").unwrap();
    for t2 in 0..7 {
        assert_eq!(r.evolve(&u, HalfTime(t2)).unwrap(), u);
    }
}

#[test]
fn half_steps_are_symplectic() {
    let mut rng = rng_from_seed(2);
    for (l, n) in [(2, 1), (4, 1), (6, 2)] {
        let g = geometry(l, n);
        let r = build_disorder(g, &mut rng);
        let f = SymplecticForm::new(l * n);
        for p in [Parity::Even, Parity::Odd] {
            assert!(f.is_symplectic(&r.half_step_matrix(p)).unwrap());
        }
        for t2 in 0..6 {
            assert!(f.is_symplectic(&r.evolution_matrix(HalfTime(t2))).unwrap());
        }
    }
}

#[test]
fn l2_odd_corner_blocks_match_oracle() {
    let group = common::brute_force_group(4);
    let g = geometry(2, 1);
    let swap = |v: u8| (v >> 2) | ((v & 3) << 2);
    for s1 in group.iter().step_by(37) {
        let mut r = DisorderRealization::identity(g);
        r.set_gate(1, common::to_symplectic(s1)).unwrap();
        let odd = r.half_step_matrix(Parity::Odd);
        for e in 0..4 {
            let want = swap(common::apply(s1, swap(1 << e)));
            let got = odd.column(e).as_u64() as u8;
            assert_eq!(got, want, "basis vector {e}");
        }
    }
}

#[test]
fn evolution_of_zero_stays_zero() {
    let g = geometry(6, 1);
    let r = build_disorder(g, &mut rng_from_seed(1));
    for t2 in 0..10 {
        assert!(r.evolve(&PhaseVector::zero(g), HalfTime(t2)).unwrap().is_zero());
    }
    assert!(r.evolve(&PhaseVector::zero(geometry(4, 1)), HalfTime(1)).is_err());
}

#[test]
fn scrambling_times() {
    assert_eq!(scrambling_time(8), HalfTime::from_periods(2));
    assert_eq!(scrambling_time(6), HalfTime::from_periods(2));
    assert_eq!(scrambling_time(4), HalfTime::from_periods(1));
    assert_eq!(scrambling_time(12), HalfTime::from_periods(3));
}

#[test]
fn causal_window_examples() {
    assert_eq!(causal_window(0, HalfTime(1), 12).sites, vec![0, 1]);
    assert_eq!(causal_window(0, HalfTime(2), 12).sites, vec![11, 0, 1, 2]);
    let full = causal_window(0, scrambling_time(8), 8);
    assert_eq!(full.len(), 8);
    assert!(full.right_front().is_none());
    assert_eq!(causal_window(3, HalfTime(1), 12).sites, vec![2, 3]);
}

#[test]
fn causality_before_scrambling() {
    let mut rng = rng_from_seed(77);
    for n in 1..=3 {
        let g = geometry(12, n);
        for _ in 0..200 {
            let r = build_disorder(g, &mut rng);
            for x0 in [0, 5] {
                let traj = r.trajectory(&PhaseVector::local_x(g, x0), scrambling_time(12).0 - 1).unwrap();
                for (t2, u) in traj.iter().enumerate() {
                    let w = causal_window(x0, HalfTime(t2 as u32), 12);
                    assert!(u.support().iter().all(|&x| w.contains(x)), "N={n} x0={x0} t2={t2}");
                }
            }
        }
    }
}

#[test]
fn pauli_codec_examples() {
    let g = geometry(3 * 2, 1);
    assert_eq!(PhaseVector::zero(g).to_pauli(), "I|I|I|I|I|I");
    let x = PhaseVector::local_x(g, 0);
    assert_eq!(x.to_pauli(), "X|I|I|I|I|I");
    assert_eq!(PhaseVector::from_pauli(g, "XIIIII").unwrap(), x);
    let g2 = geometry(2, 2);
    let v = PhaseVector::from_pauli(g2, "ZY|IX").unwrap();
    assert_eq!(v.bits().to_string(), "01110010");
    for bad in ["ZY|I", "ZYIXX", "ZQ|IX", "Z|YIX"] {
        assert!(PhaseVector::from_pauli(g2, bad).is_err(), "{bad}");
    }
}

#[test]
fn pauli_round_trip() {
    let mut rng = rng_from_seed(10);
    let g = geometry(6, 3);
    for _ in 0..1000 {
        let u = PhaseVector::from_bits(g, BitVector::random(g.dim(), &mut rng)).unwrap();
        assert_eq!(PhaseVector::from_pauli(g, &u.to_pauli()).unwrap(), u);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn vector_path_matches_dense_path(l in 1usize..5, n in 1usize..3, t2 in 0u32..9, seed: u64) {
        let g = geometry(2 * l, n);
        let mut rng = rng_from_seed(seed);
        let r = build_disorder(g, &mut rng);
        let u = PhaseVector::from_bits(g, BitVector::random(g.dim(), &mut rng)).unwrap();
        let dense = r.evolution_matrix(HalfTime(t2)).mul_vec(u.bits()).unwrap();
        let vector = r.evolve(&u, HalfTime(t2)).unwrap();
        prop_assert_eq!(vector.bits(), &dense);
    }

    #[test]
    fn evolution_composes_over_periods(l in 1usize..5, periods in 0u32..4, b in 0u32..7, seed: u64) {
        let g = geometry(2 * l, 1);
        let mut rng = rng_from_seed(seed);
        let r = build_disorder(g, &mut rng);
        let u = PhaseVector::from_bits(g, BitVector::random(g.dim(), &mut rng)).unwrap();
        let a = HalfTime::from_periods(periods);
        let direct = r.evolve(&u, HalfTime(a.0 + b)).unwrap();
        let staged = r.evolve(&r.evolve(&u, a).unwrap(), HalfTime(b)).unwrap();
        prop_assert_eq!(direct, staged);
    }

    #[test]
    fn inverse_half_steps_recover_input(l in 1usize..6, n in 1usize..3, t2 in 0u32..12, seed: u64) {
        let g = geometry(2 * l, n);
        let mut rng = rng_from_seed(seed);
        let r = build_disorder(g, &mut rng);
        let u0 = PhaseVector::from_bits(g, BitVector::random(g.dim(), &mut rng)).unwrap();
        let mut u = r.evolve(&u0, HalfTime(t2)).unwrap();
        for step in (0..t2).rev() {
            r.inverse_half_step(Parity::of_step(step), &mut u);
        }
        prop_assert_eq!(u, u0);
    }

    #[test]
    fn local_support_stays_in_window(x0 in 0usize..16, n in 1usize..4, seed: u64) {
        let g = geometry(16, n);
        let r = build_disorder(g, &mut rng_from_seed(seed));
        let traj = r.trajectory(&PhaseVector::local_x(g, x0), 2 * scrambling_time(16).0).unwrap();
        for (t2, u) in traj.iter().enumerate() {
            let w = causal_window(x0, HalfTime(t2 as u32), 16);
            prop_assert!(u.support().iter().all(|&x| w.contains(x)));
        }
    }
}
