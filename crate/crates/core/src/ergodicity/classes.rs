//! Exact law of the zero pattern of `S(3/2) u0` for any `N`.
//!
//! Three half-steps use each even gate twice and each odd gate once. A uniform gate
//! conditioned on its first output `a = S r` maps a second input `w` to `a` when
//! `w = r`, to 0 when `w = 0`, and otherwise uniformly onto the nonzero vectors
//! `c != a` with `<c, a> = <w, r>`. Odd gates used once send any nonzero input to a
//! uniform nonzero output. Every quantity therefore depends only on per-site classes:
//! zero, equal to `u0` at that site, or nonzero with a given form against it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::chain::{ChainGeometry, PhaseVector};
use crate::error::{Error, Result};

/// Largest ring handled; the work grows as `48^{L/2} 2^L`.
pub const MAX_SITES: usize = 6;

fn int(x: u64) -> BigInt {
    BigInt::from(x)
}

fn ratio(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

/// Law of the zero pattern (bit `x` set when site `x` is nonzero) of an outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternLaw {
    pub geometry: ChainGeometry,
    pub probabilities: BTreeMap<u64, BigRational>,
}

impl PatternLaw {
    /// `sum_{v != 0} |P(v) - 1/(2^{2NL} - 1)|` for a law that is constant on patterns.
    #[must_use]
    pub fn l1_to_uniform_nonzero(&self) -> BigRational {
        let g = self.geometry;
        let d: BigInt = BigInt::one() << g.site_bits();
        let space: BigInt = (BigInt::one() << g.dim()) - 1;
        let mut l1 = BigRational::zero();
        for pattern in 1u64..(1 << g.l()) {
            let size = num_traits::pow(&d - 1, pattern.count_ones() as usize);
            let q = ratio(size, space.clone());
            let p = self.probabilities.get(&pattern).cloned().unwrap_or_else(BigRational::zero);
            l1 += (p - q).abs();
        }
        l1
    }

    #[must_use]
    pub fn all_nonzero(&self) -> BigRational {
        let full = (1u64 << self.geometry.l()) - 1;
        self.probabilities.get(&full).cloned().unwrap_or_else(BigRational::zero)
    }
}

/// Class of a site vector `b` relative to the initial site vector `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Class {
    Zero,
    Equal,
    Form0,
    Form1,
}

const CLASSES: [Class; 4] = [Class::Zero, Class::Equal, Class::Form0, Class::Form1];

/// Number of site vectors in `class` relative to a zero (`r_zero`) or nonzero `r`.
fn class_size(class: Class, r_zero: bool, d: u64) -> u64 {
    match (class, r_zero) {
        (Class::Zero, _) => 1,
        (Class::Equal | Class::Form1, true) => 0,
        (Class::Form0, true) => d - 1,
        (Class::Equal, false) => 1,
        (Class::Form0, false) => d / 2 - 2,
        (Class::Form1, false) => d / 2,
    }
}

/// Weights of the two-site pattern (bit 0 first site) of a uniform nonzero pair vector.
fn nonzero_pair_patterns(d: u64) -> [BigRational; 4] {
    let den = int(d * d - 1);
    [
        BigRational::zero(),
        ratio(int(d - 1), den.clone()),
        ratio(int(d - 1), den.clone()),
        ratio(int((d - 1) * (d - 1)), den),
    ]
}

/// Pattern law of `c` uniform on `{c != 0, c != a, <c, a> = s}` for `a` with pattern `pa`.
fn coset_patterns(pa: usize, s: u8, d: u64) -> [BigRational; 4] {
    let mut counts = [0u64; 4];
    for (pc, count) in counts.iter_mut().enumerate() {
        let mut by_form = [0u64; 2];
        // Site vectors of `c` by (form against `a` at that site), given both patterns.
        let site = |i: usize| -> [u64; 2] {
            match (pc >> i & 1 == 1, pa >> i & 1 == 1) {
                (false, _) => [1, 0],
                (true, false) => [d - 1, 0],
                (true, true) => [d / 2 - 1, d / 2],
            }
        };
        let (s0, s1) = (site(0), site(1));
        for f0 in 0..2 {
            for f1 in 0..2 {
                by_form[f0 ^ f1] += s0[f0] * s1[f1];
            }
        }
        *count = by_form[s as usize];
        if s == 0 && pc == 0 {
            *count -= 1;
        }
        if s == 0 && pc == pa {
            *count -= 1;
        }
    }
    let total: u64 = counts.iter().sum();
    counts.map(|c| ratio(int(c), int(total)))
}

/// Exact pattern law of `S(3/2) u0` over uniform gates, for rings of at most
/// [`MAX_SITES`] sites.
pub fn pattern_law_three_halves(u0: &PhaseVector) -> Result<PatternLaw> {
    let g = u0.geometry();
    let l = g.l();
    if l > MAX_SITES {
        return Err(Error::InvalidArgument(format!("exact pattern law needs L <= {MAX_SITES}, got {l}")));
    }
    if u0.is_zero() {
        return Err(Error::InvalidArgument("initial vector must be nonzero".into()));
    }
    let d = 1u64 << g.site_bits();
    let pairs = l / 2;
    let r_zero: Vec<bool> = (0..l).map(|x| u0.site_is_zero(x)).collect();
    let pair_zero = |k: usize| r_zero[2 * k] && r_zero[2 * k + 1];
    let nonzero_pair = nonzero_pair_patterns(d);

    // First outputs a_k of the even gates: pattern choices and weights per pair.
    let a_choices: Vec<Vec<(usize, BigRational)>> = (0..pairs)
        .map(|k| {
            if pair_zero(k) {
                vec![(0, BigRational::one())]
            } else {
                (1..4).map(|p| (p, nonzero_pair[p].clone())).collect()
            }
        })
        .collect();

    // Outputs of odd gate j on sites (2j+1, 2j+2 mod L) as site classes with weights.
    let odd_choices = |active: bool, j: usize| -> Vec<([Class; 2], BigRational)> {
        if !active {
            return vec![([Class::Zero, Class::Zero], BigRational::one())];
        }
        let (x, y) = (2 * j + 1, (2 * j + 2) % l);
        let den = int(d * d - 1);
        let mut out = Vec::new();
        for &c1 in &CLASSES {
            for &c2 in &CLASSES {
                if c1 == Class::Zero && c2 == Class::Zero {
                    continue;
                }
                let w = class_size(c1, r_zero[x], d) * class_size(c2, r_zero[y], d);
                if w > 0 {
                    out.push(([c1, c2], ratio(int(w), den.clone())));
                }
            }
        }
        out
    };

    let mut law = vec![BigRational::zero(); 1 << l];
    let mut a_idx = vec![0usize; pairs];
    loop {
        let a: Vec<usize> = (0..pairs).map(|k| a_choices[k][a_idx[k]].0).collect();
        let a_weight: BigRational = (0..pairs).map(|k| a_choices[k][a_idx[k]].1.clone()).product();
        let site_nonzero = |x: usize| a[x / 2] >> (x % 2) & 1 == 1;
        let odd: Vec<Vec<([Class; 2], BigRational)>> = (0..pairs)
            .map(|j| odd_choices(site_nonzero(2 * j + 1) || site_nonzero((2 * j + 2) % l), j))
            .collect();
        let mut b_idx = vec![0usize; pairs];
        loop {
            let mut class = vec![Class::Zero; l];
            let mut weight = a_weight.clone();
            for j in 0..pairs {
                let (cs, w) = &odd[j][b_idx[j]];
                class[2 * j + 1] = cs[0];
                class[(2 * j + 2) % l] = cs[1];
                weight *= w;
            }
            let per_pair: Vec<[BigRational; 4]> = (0..pairs)
                .map(|k| second_output(a[k], pair_zero(k), [class[2 * k], class[2 * k + 1]], [r_zero[2 * k], r_zero[2 * k + 1]], d))
                .collect();
            for pattern in 0..(1usize << l) {
                let mut p = weight.clone();
                for (k, dist) in per_pair.iter().enumerate() {
                    let part = &dist[pattern >> (2 * k) & 3];
                    if part.is_zero() {
                        p = BigRational::zero();
                        break;
                    }
                    p *= part;
                }
                if !p.is_zero() {
                    law[pattern] += p;
                }
            }
            if !advance(&mut b_idx, |j| odd[j].len()) {
                break;
            }
        }
        if !advance(&mut a_idx, |k| a_choices[k].len()) {
            break;
        }
    }
    Ok(PatternLaw {
        geometry: g,
        probabilities: law
            .into_iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(k, p)| (k as u64, p))
            .collect(),
    })
}

/// Pattern law of the second output of an even gate whose first output had pattern `pa`.
fn second_output(pa: usize, r_pair_zero: bool, w: [Class; 2], r_zero: [bool; 2], d: u64) -> [BigRational; 4] {
    let unit = |p: usize| {
        let mut out: [BigRational; 4] = std::array::from_fn(|_| BigRational::zero());
        out[p] = BigRational::one();
        out
    };
    let w_zero = w.iter().all(|&c| c == Class::Zero);
    if w_zero {
        return unit(0);
    }
    if r_pair_zero {
        return nonzero_pair_patterns(d);
    }
    let equal = (0..2).all(|i| w[i] == Class::Equal || (w[i] == Class::Zero && r_zero[i]));
    if equal {
        return unit(pa);
    }
    let s = u8::from(w[0] == Class::Form1) ^ u8::from(w[1] == Class::Form1);
    coset_patterns(pa, s, d)
}

/// Odometer increment; false once every digit has wrapped.
fn advance(idx: &mut [usize], len: impl Fn(usize) -> usize) -> bool {
    for (i, v) in idx.iter_mut().enumerate() {
        *v += 1;
        if *v < len(i) {
            return true;
        }
        *v = 0;
    }
    false
}
