mod common;

use floquet_clifford::chain::{build_disorder, ChainGeometry, DisorderRealization, PhaseVector};
use floquet_clifford::gf2::{BitMatrix, BitVector, SymplecticForm};
use floquet_clifford::montecarlo::{rng_from_seed, within_sigmas, McConfig};
use floquet_clifford::symplectic::{group_order, sample_uniform, SymplecticMatrix};
use floquet_clifford::walls::*;

fn identity_gates(l: usize, n: usize) -> DisorderRealization {
    DisorderRealization::identity(ChainGeometry::new(l, n).unwrap())
}

#[test]
fn fixture_identities_hold() {
    let (s0, s1) = counterexample_fixture();
    let ids = fixture_identities(&s0, &s1).unwrap();
    assert!(ids.c1c0.is_zero());
    assert!(ids.c1_cycle_c0[1].is_zero());
    assert!(!ids.c1_cycle_c0[2].is_zero());
    assert_eq!(ids.cycle.pow(2), SymplecticForm::new(2).matrix());
    assert_eq!(ids.cycle.pow(4), BitMatrix::identity(4));
    for k in 1..=2u64 {
        assert_eq!(ids.cycle.pow(4 * k + 2), ids.cycle.pow(2));
    }
    let c0 = s0.blocks().unwrap().c;
    let e1 = BitVector::unit(4, 0);
    for j in 0..4 {
        let want = if j == 0 { e1.clone() } else { BitVector::zeros(4) };
        assert_eq!(c0.column(j), want, "C0 projects onto e1");
    }
    assert!(!is_right_wall(&s0, &s1).unwrap());
}

#[test]
fn example_pair_is_a_right_wall() {
    let (s0, s1) = example_wall_pair();
    assert!(is_right_wall(&s0, &s1).unwrap());
    assert!(is_right_wall_n1(&s0, &s1).unwrap());
    let m0 = s0.block_swap().unwrap();
    let m1 = s1.block_swap().unwrap();
    assert!(is_left_wall(&m0, &m1).unwrap());
}

#[test]
fn product_form_gates_are_walls() {
    let mut rng = rng_from_seed(3);
    for n in 1..=3 {
        let a = sample_uniform(n, &mut rng);
        let b = sample_uniform(n, &mut rng);
        let p = a.direct_sum(&b);
        assert!(is_product_form(&p).unwrap());
        let other = sample_uniform(2 * n, &mut rng);
        assert!(is_right_wall(&p, &other).unwrap());
        assert!(is_left_wall(&p, &other).unwrap());
    }
    let g = BitMatrix::from_row_strings(&["11", "01"]).unwrap();
    assert!(is_right_wall_n1(&SymplecticMatrix::new(g.clone()).unwrap(), &SymplecticMatrix::new(g).unwrap()).is_err());
}

#[test]
fn exact_n1_counts_match_oracle() {
    let group = common::brute_force_group(4);
    assert_eq!(group.len(), 720);
    let mut right = 0u64;
    let mut left = 0u64;
    let swap = |m: &common::Rows| {
        let s = common::to_symplectic(m).block_swap().unwrap();
        common::to_rows(&s)
    };
    let swapped: Vec<common::Rows> = group.iter().map(swap).collect();
    for i in 0..720 {
        for j in 0..720 {
            right += u64::from(common::oracle_right_wall(&group[i], &group[j]));
            left += u64::from(common::oracle_right_wall(&swapped[i], &swapped[j]));
        }
    }
    let exact = exact_wall_count_n1();
    assert_eq!(exact.pairs, 518_400);
    assert_eq!(exact.right_walls, right);
    assert_eq!(exact.left_walls, left);
    assert_eq!(exact.left_walls, exact.right_walls);
    assert_eq!(exact.n1_disagreements, 0);
    assert_eq!(exact.right_walls, 62_208);
    assert_eq!(*exact.right_probability().numer(), 3);
    assert_eq!(*exact.right_probability().denom(), 25);
    assert!(exact.rounds_to_012());
    let oracle_product = group.iter().filter(|m| common::blocks4(m)[2] == [0, 0]).count();
    assert_eq!(exact.product_form as usize, oracle_product);
    assert_eq!(exact.product_form, 36);
}

#[test]
fn product_form_formula() {
    let (num, den) = product_form_probability(1);
    assert_eq!(num.0, 36u32.into());
    assert_eq!(den.0, 720u32.into());
    let p = 36.0 / 720.0;
    assert!((0.5 * 2f64.powi(-4)..=2f64.powi(-4)).contains(&p));
    assert_eq!(group_order(2).to_u64(), Some(720));
}

#[test]
fn n1_monte_carlo_agrees_with_exact() {
    let cfg = McConfig::new(100_000, 11);
    let r = wall_probability(1, &cfg).unwrap();
    assert!(within_sigmas(r.frequency, 0.12, r.samples), "{}", r.frequency);
    assert!(r.pass);
}

#[test]
fn n2_frequency_below_bound() {
    let cfg = McConfig::new(20_000, 5);
    let r = wall_probability(2, &cfg).unwrap();
    assert!((wall_probability_bound(2) - 0.5).abs() < 1e-15);
    assert!(r.pass, "{r:?}");
}

#[test]
fn all_product_form_ring_has_l_trivial_walls() {
    let r = identity_gates(8, 1);
    let walls = scan_chain(&r).unwrap();
    assert_eq!(walls.len(), 8);
    assert!(walls.iter().all(|w| w.side == Side::Both && w.penetration == 0));
}

#[test]
fn planted_example_pair_is_found_and_confines() {
    let g = ChainGeometry::new(8, 1).unwrap();
    let mut rng = rng_from_seed(21);
    let (s0, s1) = example_wall_pair();
    for _ in 0..20 {
        let mut r = build_disorder(g, &mut rng);
        r.set_gate(0, s0.clone()).unwrap();
        r.set_gate(1, s1.clone()).unwrap();
        let walls = scan_chain(&r).unwrap();
        let right = walls
            .iter()
            .find(|w| w.position == 0 && w.side == Side::Right)
            .expect("right wall at 0");
        let report = confinement_test(&r, right, 6 * 8, &McConfig::new(100, 2)).unwrap();
        assert!(report.pass, "{report:?}");
    }
}

#[test]
fn every_detected_wall_confines() {
    let g = ChainGeometry::new(8, 1).unwrap();
    let mut rng = rng_from_seed(8);
    let mut seen = 0;
    for _ in 0..40 {
        let r = build_disorder(g, &mut rng);
        for w in scan_chain(&r).unwrap() {
            seen += 1;
            let report = confinement_test(&r, &w, 48, &McConfig::new(50, 1)).unwrap();
            assert!(report.pass, "{w:?} {report:?}");
        }
    }
    assert!(seen > 10);
}

#[test]
fn confinement_failure_implies_no_wall() {
    let mut rng = rng_from_seed(99);
    let g = ChainGeometry::new(4, 1).unwrap();
    let mut failures = 0;
    for _ in 0..2000 {
        let r = build_disorder(g, &mut rng);
        let candidate = WallReport {
            position: 0,
            side: Side::Right,
            penetration: 1,
            detected_by: WallKind::RightChain,
        };
        let report = confinement_test(&r, &candidate, 16, &McConfig::new(4, 3).with_streams(1)).unwrap();
        let wall = is_right_wall(r.gate(0), r.gate(1)).unwrap() || is_product_form(r.gate(0)).unwrap();
        if !report.pass {
            failures += 1;
            assert!(!wall);
        }
    }
    assert!(failures > 0);
}

#[test]
fn fixture_fails_confinement() {
    let (s0, s1) = counterexample_fixture();
    let mut r = identity_gates(4, 2);
    r.set_gate(0, s0).unwrap();
    r.set_gate(1, s1).unwrap();
    assert!(scan_chain(&r).unwrap().iter().all(|w| !(w.position == 0 && w.side == Side::Right)));
    let candidate = WallReport {
        position: 0,
        side: Side::Right,
        penetration: 1,
        detected_by: WallKind::RightChain,
    };
    let hit = confinement_from_seed(&r, &candidate, Side::Right, &[BitVector::unit(4, 0)], 24).unwrap();
    assert_eq!(hit, Some((6, 2)));
    let report = confinement_test(&r, &candidate, 24, &McConfig::new(100, 4)).unwrap();
    assert!(!report.pass);
}

#[test]
fn identity_lightcone_is_constant() {
    let r = identity_gates(6, 1);
    let u0 = PhaseVector::local_x(r.geometry(), 2);
    let grid = lightcone_grid(&r, &u0, 10, GridMode::Site).unwrap();
    assert!(grid.rows.iter().all(|row| *row == vec![0, 0, 1, 0, 0, 0]));
    assert!(grid.extents_csv().lines().skip(1).all(|l| l.ends_with(",2,2,1")));
    let q = lightcone_grid(&r, &u0, 1, GridMode::Qubit).unwrap();
    assert_eq!(q.rows[0], vec![0, 0, 1, 0, 0, 0]);
}

#[test]
fn lightcone_grows_at_most_two_sites_per_period() {
    let g = ChainGeometry::new(32, 1).unwrap();
    let mut rng = rng_from_seed(17);
    for _ in 0..20 {
        let r = build_disorder(g, &mut rng);
        let grid = lightcone_grid(&r, &PhaseVector::local_x(g, 16), 12, GridMode::Site).unwrap();
        assert_eq!(grid.supports[0], vec![16]);
        for (t2, sup) in grid.supports.iter().enumerate() {
            if let Some((_, _, width)) = support_arc(sup, 32) {
                assert!(width <= (2 * t2).max(1), "t2 {t2} width {width}");
            }
        }
    }
}

#[test]
fn bracketing_walls_saturate_width() {
    let g = ChainGeometry::new(64, 1).unwrap();
    let mut rng = rng_from_seed(5);
    let r = build_disorder(g, &mut rng);
    let walls = scan_chain(&r).unwrap();
    let blocks_left = |w: &WallReport| matches!(w.side, Side::Left | Side::Both);
    let blocks_right = |w: &WallReport| matches!(w.side, Side::Right | Side::Both);
    let left = walls.iter().filter(|w| blocks_left(w) && w.position < 30).max_by_key(|w| w.position).unwrap();
    let right = walls.iter().filter(|w| blocks_right(w) && w.position > left.position + 2).min_by_key(|w| w.position).unwrap();
    let seed = left.position + 1 + usize::from(left.side == Side::Left);
    assert!(seed <= right.position);
    let u0 = PhaseVector::local_x(g, seed);
    let grid = lightcone_grid(&r, &u0, 400, GridMode::Site).unwrap();
    let lo = left.position + 1 - usize::from(left.penetration);
    let hi = right.position + usize::from(right.penetration);
    for sup in &grid.supports {
        assert!(sup.iter().all(|&x| (lo..=hi).contains(&x)), "{sup:?} not in {lo}..={hi}");
    }
    let svg = grid.to_svg(&[left.position, right.position]);
    assert!(svg.starts_with("<?xml") && svg.contains("stroke=\"red\""));
    let pgm = grid.to_pgm(&[right.position]);
    assert!(pgm.starts_with("P2\n64 401\n255\n"));
}

#[test]
fn n1_rejects_other_sizes() {
    let (s0, s1) = counterexample_fixture();
    assert!(is_right_wall_n1(&s0, &s1).is_err());
    let (e0, _) = example_wall_pair();
    assert!(is_right_wall(&e0, &s1).is_err());
}
