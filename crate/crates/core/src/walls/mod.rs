//! One-sided walls: gate pairs that stop operator growth in one direction.

mod lightcone;
mod scan;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{mismatch, Error, Result};
use crate::gf2::BitMatrix;
use crate::montecarlo::{below_bound, binomial_sigma, sample_counts, McConfig};
use crate::{SCHEMA, VERSION};
use crate::symplectic::{enumerate_group, group_order, sample_uniform, ExactCount, SymplecticMatrix};

pub use lightcone::{lightcone_grid, support_arc, GridMode, LightconeGrid};
pub use scan::{
    confinement_from_seed, confinement_test, scan_chain, ConfinementReport, Side, Violation, WallKind, WallReport,
};

fn pair_blocks(s0: &SymplecticMatrix, s1: &SymplecticMatrix) -> Result<(crate::symplectic::BlockView, crate::symplectic::BlockView)> {
    if s0.n() != s1.n() {
        return Err(mismatch("wall pair", s0.dim(), s1.dim()));
    }
    Ok((s0.blocks()?, s1.blocks()?))
}

/// `C1 (D0 A1)^k C0 = 0` for `k = 0 .. 4N^2 - 1`, where `S0` is the even gate at the wall
/// and `S1` the odd gate to its right.
pub fn is_right_wall(s0: &SymplecticMatrix, s1: &SymplecticMatrix) -> Result<bool> {
    let (b0, b1) = pair_blocks(s0, s1)?;
    let h = b0.a.rows();
    let cycle = &b0.d * &b1.a;
    let mut x = b0.c.clone();
    for _ in 0..h * h {
        if x.is_zero() {
            return Ok(true);
        }
        if !(&b1.c * &x).is_zero() {
            return Ok(false);
        }
        x = &cycle * &x;
    }
    Ok(true)
}

/// The two conditions `C1 C0 = 0` and `C1 D0 A1 C0 = 0`, sufficient at `N = 1`.
pub fn is_right_wall_n1(s0: &SymplecticMatrix, s1: &SymplecticMatrix) -> Result<bool> {
    let (b0, b1) = pair_blocks(s0, s1)?;
    if b0.a.rows() != 2 {
        return Err(Error::InvalidArgument(format!("expected N = 1 gates, got N = {}", b0.a.rows() / 2)));
    }
    let c1c0 = &b1.c * &b0.c;
    Ok(c1c0.is_zero() && (&(&(&b1.c * &b0.d) * &b1.a) * &b0.c).is_zero())
}

/// Left wall of the even gate `S_even` on `(x, x+1)` against the odd gate `S_odd` on
/// `(x-1, x)`: the right-wall test on both gates conjugated by the site swap, which reads
/// `B_odd (A_even D_odd)^k B_even = 0`.
pub fn is_left_wall(s_even: &SymplecticMatrix, s_odd: &SymplecticMatrix) -> Result<bool> {
    is_right_wall(&s_even.block_swap()?, &s_odd.block_swap()?)
}

/// `C = 0`, equivalently `B = 0`: the gate never moves anything across its bond.
pub fn is_product_form(s: &SymplecticMatrix) -> Result<bool> {
    Ok(s.blocks()?.c.is_zero())
}

/// `4N 2^{-2N(N-1)}`.
#[must_use]
pub fn wall_probability_bound(n: usize) -> f64 {
    4.0 * n as f64 * (-2.0 * (n * (n - 1)) as f64).exp2()
}

/// Monte Carlo estimate of the right-wall probability of a random gate pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WallProbability {
    #[serde(rename = "N")]
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub streams: usize,
    pub right_walls: u64,
    pub left_walls: u64,
    pub frequency: f64,
    pub sigma: f64,
    pub bound: f64,
    pub pass: bool,
    pub schema: u32,
    pub version: &'static str,
}

pub fn wall_probability(n: usize, cfg: &McConfig) -> Result<WallProbability> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    let counts = sample_counts(cfg, |rng| {
        let s0 = sample_uniform(2 * n, rng);
        let s1 = sample_uniform(2 * n, rng);
        (
            is_right_wall(&s0, &s1).expect("equal sizes"),
            is_left_wall(&s0, &s1).expect("equal sizes"),
        )
    });
    let total = counts.total();
    let right = counts.count_where(|k| k.0);
    let frequency = right as f64 / total.max(1) as f64;
    let bound = wall_probability_bound(n);
    Ok(WallProbability {
        n,
        samples: total,
        seed: cfg.seed,
        streams: cfg.streams,
        right_walls: right,
        left_walls: counts.count_where(|k| k.1),
        frequency,
        sigma: binomial_sigma(frequency, total),
        bound,
        pass: below_bound(frequency, bound, total),
        schema: SCHEMA,
        version: VERSION,
    })
}

/// Wall and product-form counts over all `720^2` ordered pairs of `N = 1` gates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactWallCount {
    pub pairs: u64,
    pub right_walls: u64,
    pub left_walls: u64,
    /// Pairs where the two-condition test and the full `k` range disagree.
    pub n1_disagreements: u64,
    pub product_form: u64,
    pub group_order: u64,
}

impl ExactWallCount {
    #[must_use]
    pub fn right_probability(&self) -> Ratio<u64> {
        Ratio::new(self.right_walls, self.pairs)
    }

    #[must_use]
    pub fn product_form_probability(&self) -> Ratio<u64> {
        Ratio::new(self.product_form, self.group_order)
    }

    /// Whether the right-wall probability prints as `0.12` at two decimals.
    #[must_use]
    pub fn rounds_to_012(&self) -> bool {
        format!("{:.2}", self.right_walls as f64 / self.pairs as f64) == "0.12"
    }
}

/// Enumerates every `N = 1` gate pair.
#[must_use]
pub fn exact_wall_count_n1() -> ExactWallCount {
    let group = enumerate_group(2);
    let blocks: Vec<_> = group.iter().map(|g| g.blocks().expect("even split")).collect();
    let swapped: Vec<_> = group.iter().map(|g| g.block_swap().expect("even split")).collect();
    let (right, left, disagree) = (0..group.len())
        .into_par_iter()
        .map(|i| {
            let mut acc = (0u64, 0u64, 0u64);
            for j in 0..group.len() {
                let full = is_right_wall(&group[i], &group[j]).expect("equal sizes");
                let n1 = is_right_wall_n1(&group[i], &group[j]).expect("N = 1");
                acc.0 += u64::from(full);
                acc.2 += u64::from(full != n1);
                acc.1 += u64::from(is_right_wall(&swapped[i], &swapped[j]).expect("equal sizes"));
            }
            acc
        })
        .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    let product_form = blocks.iter().filter(|b| b.c.is_zero()).count() as u64;
    ExactWallCount {
        pairs: (group.len() * group.len()) as u64,
        right_walls: right,
        left_walls: left,
        n1_disagreements: disagree,
        product_form,
        group_order: group.len() as u64,
    }
}

/// `|Sp(2n)|^2 / |Sp(4n)|`, the probability that a uniform element of `Sp(4n)` has `C = 0`.
#[must_use]
pub fn product_form_probability(n: usize) -> (ExactCount, ExactCount) {
    let small = group_order(n).0;
    (ExactCount(&small * &small), group_order(2 * n))
}

/// The pair of `N = 1` gates with a one-sided right wall used as the textbook example.
#[must_use]
pub fn example_wall_pair() -> (SymplecticMatrix, SymplecticMatrix) {
    let s0 = SymplecticMatrix::from_row_strings(&["1101", "0101", "1010", "0001"]).expect("symplectic");
    let s1 = SymplecticMatrix::from_row_strings(&["1001", "0100", "0110", "0001"]).expect("symplectic");
    (s0, s1)
}

/// An `N = 2` pair with `C1 C0 = 0` and `C1 D0 A1 C0 = 0` that is nevertheless not a wall.
#[must_use]
pub fn counterexample_fixture() -> (SymplecticMatrix, SymplecticMatrix) {
    let s0 = SymplecticMatrix::from_row_strings(&[
        "10000000", "01000010", "00100000", "00010000", "10000001", "00000010", "00001000", "00000100",
    ])
    .expect("symplectic");
    let s1 = SymplecticMatrix::from_row_strings(&[
        "10001000", "01000000", "00100000", "00010000", "00001000", "01000100", "00000010", "00000001",
    ])
    .expect("symplectic");
    (s0, s1)
}

/// The products that characterize the fixture pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureIdentities {
    pub c1c0: BitMatrix,
    pub c1_cycle_c0: Vec<BitMatrix>,
    pub cycle: BitMatrix,
}

/// `C1 C0`, `C1 (D0 A1)^k C0` for `k = 0..=3`, and `D0 A1`.
pub fn fixture_identities(s0: &SymplecticMatrix, s1: &SymplecticMatrix) -> Result<FixtureIdentities> {
    let (b0, b1) = pair_blocks(s0, s1)?;
    let cycle = &b0.d * &b1.a;
    let c1_cycle_c0 = (0..4u64).map(|k| &(&b1.c * &cycle.pow(k)) * &b0.c).collect();
    Ok(FixtureIdentities {
        c1c0: &b1.c * &b0.c,
        c1_cycle_c0,
        cycle,
    })
}
