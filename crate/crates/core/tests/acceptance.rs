//! End-to-end acceptance: thirteen criteria, one PASS/FAIL line each.
//!
//! Lines are written straight to stdout so they appear without `--nocapture`.

mod common;

use std::io::Write;

use floquet_clifford::chain::{build_disorder, causal_window, scrambling_time, ChainGeometry, DisorderRealization, HalfTime, PhaseVector};
use floquet_clifford::design::{advantage_estimate, default_inputs, Evaluation};
use floquet_clifford::ergodicity::exact::local_matrix;
use floquet_clifford::ergodicity::{transition_histogram, zero_site_stats, ExactEnsemble};
use floquet_clifford::gf2::{is_symplectic, BitMatrix, BitVector, SymplecticForm};
use floquet_clifford::montecarlo::{rng_from_seed, within_sigmas, EmpiricalDistribution, McConfig};
use floquet_clifford::symplectic::{
    block_rank_histogram, enumerate_group, group_order, sample_uniform, single_rank_tail_bound, tail_rows, Block,
};
use floquet_clifford::walls::*;
use num_rational::Ratio;
use num_traits::ToPrimitive;

/// Monte Carlo agreement is `|f - p| <= SIGMAS * sigma`.
const SIGMAS: f64 = 4.0;
/// Wall probability samples.
const WALL_SAMPLES: u64 = 1_000_000;
/// Transition histogram samples.
const HIST_SAMPLES: u64 = 100_000;
/// Zero-site samples.
const ZERO_SAMPLES: u64 = 100_000;
/// Rank tail samples per `n`.
const RANK_SAMPLES: u64 = 50_000;
/// Causality realizations per `N`.
const CAUSAL_REALIZATIONS: usize = 1000;
/// Confinement trials per wall.
const CONFINEMENT_TRIALS: u64 = 100;

type Outcome = (bool, String);

fn criterion_1() -> Outcome {
    let brute1 = common::brute_force_group(2).len() as u64;
    let brute2 = common::brute_force_group(4).len() as u64;
    let o1 = group_order(1).to_u64();
    let o2 = group_order(2).to_u64();
    let pass = o1 == Some(6) && o2 == Some(720) && brute1 == 6 && brute2 == 720;
    (pass, format!("group orders {o1:?}, {o2:?}; brute force {brute1}, {brute2}"))
}

fn criterion_2() -> Outcome {
    let group = enumerate_group(1);
    let mut pass = group.len() == 6;
    for u in 1..4u64 {
        let u = BitVector::from_u64(2, u);
        for target in 1..4u64 {
            let hits = group.iter().filter(|s| s.apply(&u).unwrap().as_u64() == target).count();
            pass &= Ratio::new(hits, group.len()) == Ratio::new(1, 3);
        }
    }
    (pass, "prob{u' = S u} = 1/3 for every nonzero u, u' at n=1".into())
}

fn criterion_3() -> Outcome {
    let exact = exact_wall_count_n1();
    let p = exact.right_probability();
    let mc = wall_probability(1, &McConfig::new(WALL_SAMPLES, 2024)).unwrap();
    let pexact = p.to_f64().unwrap();
    let pass = exact.pairs == 518_400 && exact.rounds_to_012() && within_sigmas(mc.frequency, pexact, mc.samples);
    (
        pass,
        format!("exact {p} = {pexact:.4} rounds to 0.12; Monte Carlo {:.5} +- {:.5} at {WALL_SAMPLES}", mc.frequency, mc.sigma),
    )
}

fn criterion_4() -> Outcome {
    let group = enumerate_group(2);
    let product = group.iter().filter(|s| is_product_form(s).unwrap()).count();
    let freq = Ratio::new(product, group.len());
    let lo = Ratio::new(1, 32);
    let hi = Ratio::new(1, 16);
    let pass = freq == Ratio::new(36, 720) && lo <= freq && freq <= hi;
    (pass, format!("product form {product}/{} = {freq} in [1/32, 1/16]", group.len()))
}

fn criterion_5() -> Outcome {
    let (s0, s1) = counterexample_fixture();
    let form = SymplecticForm::new(4);
    let symplectic = is_symplectic(s0.matrix(), form).unwrap() && is_symplectic(s1.matrix(), form).unwrap();
    let ids = fixture_identities(&s0, &s1).unwrap();
    let pass = symplectic
        && ids.c1c0.is_zero()
        && ids.c1_cycle_c0[1].is_zero()
        && !ids.c1_cycle_c0[2].is_zero()
        && ids.cycle.pow(2) == SymplecticForm::new(2).matrix()
        && ids.cycle.pow(4) == BitMatrix::identity(4);
    (pass, "fixture symplectic; C1C0 = 0, C1(D0A1)C0 = 0, C1(D0A1)^2C0 != 0, (D0A1)^2 = J, (D0A1)^4 = I".into())
}

fn criterion_6() -> Outcome {
    let group = enumerate_group(2);
    let mut disagreements = 0u64;
    for s0 in &group {
        for s1 in &group {
            disagreements += u64::from(is_right_wall_n1(s0, s1).unwrap() != is_right_wall(s0, s1).unwrap());
        }
    }
    (disagreements == 0, format!("{disagreements} disagreements over 720^2 pairs"))
}

fn criterion_7() -> Outcome {
    let l = 12;
    let t2_scr = scrambling_time(l).0;
    let mut rng = rng_from_seed(7);
    let mut violations = 0u64;
    let mut checked = 0u64;
    for n in 1..=3 {
        let g = ChainGeometry::new(l, n).unwrap();
        for _ in 0..CAUSAL_REALIZATIONS {
            let r = build_disorder(g, &mut rng);
            for x0 in 0..l {
                let traj = r.trajectory(&PhaseVector::local_x(g, x0), t2_scr - 1).unwrap();
                for (t2, u) in traj.iter().enumerate() {
                    let w = causal_window(x0, HalfTime(t2 as u32), l);
                    checked += 1;
                    violations += u64::from(!u.support().iter().all(|&x| w.contains(x)));
                }
            }
        }
    }
    (violations == 0, format!("{violations} violations in {checked} snapshots (L=12, N=1..3, t2 < {t2_scr})"))
}

fn criterion_8() -> Outcome {
    let g = ChainGeometry::new(2, 1).unwrap();
    let ens = ExactEnsemble::new(g).unwrap();
    let u0 = PhaseVector::local_x(g, 0);
    let mut worst = 0.0f64;
    let mut pass = true;
    for t2 in 1..=6u32 {
        let exact = ens.distribution(&u0, HalfTime(t2)).unwrap();
        let mc = transition_histogram(&u0, HalfTime(t2), &McConfig::new(HIST_SAMPLES, 100 + u64::from(t2)), None).unwrap();
        for v in 0..16u64 {
            let p = exact.probability(v).to_f64().unwrap();
            let f = mc.frequency(&BitVector::from_u64(4, v));
            let sigma = (p * (1.0 - p) / mc.total() as f64).sqrt();
            if sigma > 0.0 {
                worst = worst.max((f - p).abs() / sigma);
            }
            pass &= within_sigmas(f, p, mc.total());
        }
    }
    let t2_scr = scrambling_time(2).0;
    for t2 in (t2_scr..=6).filter(|t| t % 2 == 1) {
        for v in 1..16u64 {
            let u = PhaseVector::from_bits(g, BitVector::from_u64(4, v)).unwrap();
            let cond = ens.distribution(&u, HalfTime(t2)).unwrap().conditional_all_nonzero();
            pass &= cond.len() == 9 && cond.values().all(|p| *p == Ratio::new(1, 9));
        }
    }
    (pass, format!("histograms within {worst:.2} sigma of enumeration; conditional law 1/9 at t2 = 3, 5"))
}

fn criterion_9() -> Outcome {
    let g = ChainGeometry::new(2, 1).unwrap();
    let u0 = PhaseVector::local_x(g, 0);
    let exact = ExactEnsemble::new(g).unwrap().distribution(&u0, HalfTime(1)).unwrap().site_zero_probability(1);
    let table = zero_site_stats(&u0, HalfTime(1), &McConfig::new(ZERO_SAMPLES, 9)).unwrap();
    let f = table.rows[1].frequency;
    let pass = exact == Ratio::new(3, 15) && within_sigmas(f, 0.2, table.samples);
    (pass, format!("exact {exact}; Monte Carlo {f:.5} at {ZERO_SAMPLES}"))
}

fn criterion_10() -> Outcome {
    let mut exact = EmpiricalDistribution::new();
    for s in enumerate_group(2) {
        exact.record(s.blocks().unwrap().c.rank());
    }
    let mut pass = tail_rows(&exact, 2, |k| single_rank_tail_bound(1, k)).iter().all(|r| r.pass);
    for n in [2, 4, 6] {
        let hist = block_rank_histogram(n, Block::C, &McConfig::new(RANK_SAMPLES, n as u64));
        pass &= tail_rows(&hist, 2 * n, |k| single_rank_tail_bound(n, k)).iter().all(|r| r.pass);
    }
    (pass, format!("C-block rank tails: enumerated n=1, sampled n=2,4,6 at {RANK_SAMPLES}"))
}

fn criterion_11() -> Outcome {
    let mut values = Vec::new();
    for n in 1..=3 {
        let g = ChainGeometry::new(4, n).unwrap();
        let t = HalfTime(scrambling_time(4).0 + 1);
        let r = advantage_estimate(g, t, &default_inputs(g), Evaluation::Exact).unwrap();
        values.push((r.worst_l1, r.worst_l1_exact.unwrap()));
    }
    let pass = values.windows(2).all(|w| w[1].0 < w[0].0);
    let shown: Vec<String> = values.iter().map(|(v, q)| format!("{q} ({v:.5})")).collect();
    (pass, format!("worst l1 at L=4, t=3/2 for N=1,2,3: {}", shown.join(" > ")))
}

fn criterion_12() -> Outcome {
    let mut rng = rng_from_seed(12);
    let mut walls_seen = 0;
    let mut failed = 0;
    for (n, realizations) in [(1, 30), (2, 30)] {
        let g = ChainGeometry::new(8, n).unwrap();
        for i in 0..realizations {
            let r = build_disorder(g, &mut rng);
            for w in scan_chain(&r).unwrap() {
                walls_seen += 1;
                let cfg = McConfig::new(CONFINEMENT_TRIALS, 1000 + i);
                failed += usize::from(!confinement_test(&r, &w, 6 * 8, &cfg).unwrap().pass);
            }
        }
    }
    let (s0, s1) = counterexample_fixture();
    let mut r = DisorderRealization::identity(ChainGeometry::new(4, 2).unwrap());
    r.set_gate(0, s0).unwrap();
    r.set_gate(1, s1).unwrap();
    let candidate = WallReport {
        position: 0,
        side: Side::Right,
        penetration: 1,
        detected_by: WallKind::RightChain,
    };
    let fixture = confinement_test(&r, &candidate, 6 * 4, &McConfig::new(CONFINEMENT_TRIALS, 5)).unwrap();
    let pass = walls_seen > 0 && failed == 0 && !fixture.pass;
    (
        pass,
        format!("{walls_seen} walls, {failed} confinement failures; fixture violations {}", fixture.violations),
    )
}

fn criterion_13() -> Outcome {
    let g = ChainGeometry::new(2, 1).unwrap();
    let ens = ExactEnsemble::new(g).unwrap();
    let mut rng = rng_from_seed(13);
    let mut pass = true;
    for _ in 0..3 {
        let locals: Vec<_> = (0..2).map(|_| sample_uniform(1, &mut rng)).collect();
        let x = local_matrix(g, &locals);
        let inv = x.inverse().unwrap();
        for t2 in [2, 4, 6] {
            for v in 1..16u64 {
                let u0 = PhaseVector::from_bits(g, BitVector::from_u64(4, v)).unwrap();
                let plain = ens.distribution(&u0, HalfTime(t2)).unwrap();
                let dressed = ens.dressed_distribution(&u0, HalfTime(t2), Some(&x), Some(&inv)).unwrap();
                pass &= plain.counts == dressed.counts;
            }
        }
    }
    (pass, "L=2, N=1 laws at t=1,2,3 unchanged under three local conjugations".into())
}

#[test]
fn acceptance() {
    let criteria: [fn() -> Outcome; 13] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
        criterion_12,
        criterion_13,
    ];
    let mut failed = Vec::new();
    let mut out = std::io::stdout();
    for (k, run) in criteria.iter().enumerate() {
        let (pass, detail) = run();
        let status = if pass { "PASS" } else { "FAIL" };
        writeln!(out, "{status} criterion {}: {detail}", k + 1).unwrap();
        if !pass {
            failed.push(k + 1);
        }
    }
    out.flush().unwrap();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
    assert_eq!(SIGMAS, floquet_clifford::montecarlo::SIGMAS);
}
