use serde::Serialize;

use super::{is_left_wall, is_product_form, is_right_wall};
use crate::chain::DisorderRealization;
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::montecarlo::{run_streams, McConfig};
use crate::{SCHEMA, VERSION};

/// Direction a wall blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    /// Both directions; only product-form gates.
    Both,
}

/// Condition that produced a wall report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WallKind {
    /// `C = 0` for the gate at `position`.
    ProductForm,
    /// `C_{x+1} (D_x A_{x+1})^k C_x = 0`.
    RightChain,
    /// `B_{x-1} (A_x D_{x-1})^k B_x = 0`.
    LeftChain,
}

/// A wall found in a realization.
///
/// A right wall at `x` keeps operators supported on `s <= x` inside `s <= x + penetration`;
/// a left wall at `x` keeps operators supported on `s >= x + 1` inside
/// `s >= x + 1 - penetration`. A product-form gate at `x` separates `s <= x` from
/// `s >= x + 1` with penetration 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct WallReport {
    pub position: usize,
    pub side: Side,
    pub penetration: u8,
    pub detected_by: WallKind,
}

/// Every wall of the ring: one product-form report per product-form gate, and one-sided
/// walls at each even gate `x`, paired with gate `x + 1` (right) or `x - 1` (left) when
/// neither gate of the pair is product form.
pub fn scan_chain(realization: &DisorderRealization) -> Result<Vec<WallReport>> {
    let l = realization.geometry().l();
    let product: Vec<bool> = realization
        .gates()
        .iter()
        .map(is_product_form)
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for x in 0..l {
        if product[x] {
            out.push(WallReport {
                position: x,
                side: Side::Both,
                penetration: 0,
                detected_by: WallKind::ProductForm,
            });
        }
        if x % 2 != 0 || product[x] {
            continue;
        }
        let (right, left) = ((x + 1) % l, (x + l - 1) % l);
        if !product[right] && is_right_wall(realization.gate(x), realization.gate(right))? {
            out.push(WallReport {
                position: x,
                side: Side::Right,
                penetration: 1,
                detected_by: WallKind::RightChain,
            });
        }
        if !product[left] && is_left_wall(realization.gate(x), realization.gate(left))? {
            out.push(WallReport {
                position: x,
                side: Side::Left,
                penetration: 1,
                detected_by: WallKind::LeftChain,
            });
        }
    }
    Ok(out)
}

/// Segment `lo..=hi` of the infinite chain obtained by repeating the ring's gates with
/// period `L`; bond `(s, s+1)` carries gate `s mod L`. Bonds leaving the segment are
/// dropped.
struct Line<'a> {
    realization: &'a DisorderRealization,
    lo: i64,
    sites: Vec<BitVector>,
}

impl Line<'_> {
    fn gate_index(&self, s: i64) -> usize {
        s.rem_euclid(self.realization.geometry().l() as i64) as usize
    }

    fn half_step(&mut self, parity: usize) {
        let w = self.realization.geometry().site_bits();
        let hi = self.lo + self.sites.len() as i64 - 1;
        let first = if (self.lo.rem_euclid(2) as usize) == parity { self.lo } else { self.lo + 1 };
        let mut s = first;
        while s < hi {
            let i = (s - self.lo) as usize;
            let input = self.sites[i].concat(&self.sites[i + 1]);
            if !input.is_zero() {
                let out = self.realization.gate(self.gate_index(s)).apply(&input).expect("gate size");
                self.sites[i] = out.slice(0, w);
                self.sites[i + 1] = out.slice(w, w);
            }
            s += 2;
        }
    }

    fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.sites
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, _)| self.lo + i as i64)
    }
}

/// First time an operator left the allowed side of a wall.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub trial: u64,
    pub t2: u32,
    /// Lifted-chain site outside the allowed region.
    pub site: i64,
}

/// Result of a confinement test of one wall.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfinementReport {
    pub wall: WallReport,
    pub trials: u64,
    pub t2max: u32,
    pub seed: u64,
    pub streams: usize,
    pub violations: u64,
    pub first_violation: Option<Violation>,
    pub pass: bool,
    pub schema: u32,
    pub version: &'static str,
}

/// Allowed region and seed sites for one side of a wall, in lifted coordinates.
#[derive(Clone, Copy, Debug)]
struct Setup {
    seed_lo: i64,
    seed_hi: i64,
    allowed_lo: i64,
    allowed_hi: i64,
}

fn setups(wall: &WallReport, l: usize) -> Vec<Setup> {
    let x = wall.position as i64;
    let width = l as i64;
    let pen = i64::from(wall.penetration);
    let right = Setup {
        seed_lo: x - width + 1,
        seed_hi: x,
        allowed_lo: i64::MIN / 4,
        allowed_hi: x + pen,
    };
    let left = Setup {
        seed_lo: x + 1,
        seed_hi: x + width,
        allowed_lo: x + 1 - pen,
        allowed_hi: i64::MAX / 4,
    };
    match wall.side {
        Side::Right => vec![right],
        Side::Left => vec![left],
        Side::Both => vec![right, left],
    }
}

fn run_setup(realization: &DisorderRealization, setup: Setup, seed: &[BitVector], t2max: u32) -> Option<(u32, i64)> {
    let reach = i64::from(t2max) + 2;
    let lo = (setup.seed_lo - reach).max(setup.allowed_lo - 1);
    let hi = (setup.seed_hi + reach).min(setup.allowed_hi + 1);
    let w = realization.geometry().site_bits();
    let mut sites = vec![BitVector::zeros(w); (hi - lo + 1) as usize];
    for (k, v) in seed.iter().enumerate() {
        sites[(setup.seed_lo - lo) as usize + k] = v.clone();
    }
    let mut line = Line { realization, lo, sites };
    let outside = |line: &Line<'_>| line.support().find(|&s| s < setup.allowed_lo || s > setup.allowed_hi);
    if let Some(s) = outside(&line) {
        return Some((0, s));
    }
    for step in 0..t2max {
        line.half_step((step % 2) as usize);
        if let Some(s) = outside(&line) {
            return Some((step + 1, s));
        }
    }
    None
}

/// Evolves `seed`, placed on the allowed side starting at the site next to the wall,
/// and returns the first `(t2, site)` outside the allowed region.
///
/// For a right wall the last seed entry sits at the wall position; for a left wall the
/// first entry sits at `position + 1`.
pub fn confinement_from_seed(
    realization: &DisorderRealization,
    wall: &WallReport,
    side: Side,
    seed: &[BitVector],
    t2max: u32,
) -> Result<Option<(u32, i64)>> {
    let l = realization.geometry().l();
    let all = setups(wall, l);
    let pick = match (wall.side, side) {
        (Side::Both, Side::Right) => all[0],
        (Side::Both, Side::Left) => all[1],
        (s, t) if s == t => all[0],
        _ => return Err(Error::InvalidArgument(format!("wall blocks {:?}, not {side:?}", wall.side))),
    };
    let w = realization.geometry().site_bits();
    if seed.is_empty() || seed.len() > l || seed.iter().any(|v| v.len() != w) {
        return Err(Error::InvalidArgument(format!("seed must hold 1..={l} site vectors of {w} bits")));
    }
    let setup = match side {
        Side::Left => Setup {
            seed_hi: pick.seed_lo + seed.len() as i64 - 1,
            ..pick
        },
        _ => Setup {
            seed_lo: pick.seed_hi - seed.len() as i64 + 1,
            ..pick
        },
    };
    Ok(run_setup(realization, setup, seed, t2max))
}

/// Evolves `trials` random operators supported on `L` sites on the allowed side of `wall`
/// for `t2max` half-steps and checks that their support stays within the wall's reach.
///
/// The ring is lifted to the infinite periodic chain so that an operator cannot reach the
/// wall again from the other side after going around the ring.
pub fn confinement_test(
    realization: &DisorderRealization,
    wall: &WallReport,
    t2max: u32,
    cfg: &McConfig,
) -> Result<ConfinementReport> {
    let g = realization.geometry();
    if wall.position >= g.l() {
        return Err(Error::InvalidArgument(format!("wall position {} outside ring", wall.position)));
    }
    let all = setups(wall, g.l());
    let mut offsets = vec![0u64; cfg.streams];
    for i in 1..cfg.streams {
        offsets[i] = offsets[i - 1] + cfg.stream_samples(i - 1);
    }
    let results = run_streams(cfg, |rng, n| {
        let mut count = 0u64;
        let mut first: Option<(u64, u32, i64)> = None;
        for k in 0..n {
            for setup in &all {
                let len = (setup.seed_hi - setup.seed_lo + 1) as usize;
                let seed: Vec<BitVector> = loop {
                    let v: Vec<BitVector> = (0..len).map(|_| BitVector::random(g.site_bits(), rng)).collect();
                    if v.iter().any(|s| !s.is_zero()) {
                        break v;
                    }
                };
                if let Some((t2, s)) = run_setup(realization, *setup, &seed, t2max) {
                    count += 1;
                    first.get_or_insert((k, t2, s));
                }
            }
        }
        (count, first)
    });
    let violations = results.iter().map(|r| r.0).sum();
    let first_violation = results
        .iter()
        .enumerate()
        .find_map(|(i, r)| r.1.map(|(k, t2, site)| Violation { trial: offsets[i] + k, t2, site }));
    Ok(ConfinementReport {
        wall: *wall,
        trials: cfg.samples,
        t2max,
        seed: cfg.seed,
        streams: cfg.streams,
        violations,
        first_violation,
        pass: violations == 0,
        schema: SCHEMA,
        version: VERSION,
    })
}
