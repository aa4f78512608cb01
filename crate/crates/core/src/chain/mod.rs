//! Floquet brickwork chains: geometry, time, phase-space vectors and evolution.

mod phase;
mod realization;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

pub use phase::PhaseVector;
pub use realization::{build_disorder, DisorderRealization, RealizationFile};

/// `L` sites on a ring, `N` qubits per site.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ChainGeometry {
    l: usize,
    n: usize,
}

impl ChainGeometry {
    pub fn new(l: usize, n: usize) -> Result<Self> {
        if l < 2 || !l.is_multiple_of(2) {
            return Err(Error::InvalidGeometry(format!("L must be even and >= 2, got {l}")));
        }
        if n < 1 {
            return Err(Error::InvalidGeometry("N must be >= 1".into()));
        }
        Ok(Self { l, n })
    }

    /// Number of sites.
    #[must_use]
    pub fn l(&self) -> usize {
        self.l
    }

    /// Qubits per site.
    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Bits per site, `2N`.
    #[must_use]
    pub fn site_bits(&self) -> usize {
        2 * self.n
    }

    /// Phase-space dimension `2NL`.
    #[must_use]
    pub fn dim(&self) -> usize {
        2 * self.n * self.l
    }

    #[must_use]
    pub fn site(&self, x: i64) -> usize {
        x.rem_euclid(self.l as i64) as usize
    }
}

/// Time counted in half-steps, `t = t2 / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HalfTime(pub u32);

impl HalfTime {
    #[must_use]
    pub fn t2(self) -> u32 {
        self.0
    }

    #[must_use]
    pub fn from_periods(t: u32) -> Self {
        Self(2 * t)
    }

    #[must_use]
    pub fn is_integer(self) -> bool {
        self.0.is_multiple_of(2)
    }

    #[must_use]
    pub fn as_f64(self) -> f64 {
        f64::from(self.0) / 2.0
    }
}

impl fmt::Display for HalfTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfTime {
    type Err = Error;

    /// Accepts `5/2`, `2.5`, `2` or `t2=5`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("cannot read a time from {s:?}"));
        if let Some(rest) = s.strip_prefix("t2=") {
            return rest.trim().parse().map(Self).map_err(|_| bad());
        }
        if let Some((num, den)) = s.split_once('/') {
            let num: u32 = num.trim().parse().map_err(|_| bad())?;
            return match den.trim() {
                "1" => Ok(Self(2 * num)),
                "2" => Ok(Self(num)),
                _ => Err(bad()),
            };
        }
        let x: f64 = s.parse().map_err(|_| bad())?;
        let t2 = 2.0 * x;
        if !(0.0..=f64::from(u32::MAX)).contains(&t2) || t2.fract() != 0.0 {
            return Err(bad());
        }
        Ok(Self(t2 as u32))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Parity of the half-step with index `step` (0-based, even first).
    #[must_use]
    pub fn of_step(step: u32) -> Self {
        if step.is_multiple_of(2) {
            Self::Even
        } else {
            Self::Odd
        }
    }
}

/// Earliest time a single-site perturbation can cover the ring.
#[must_use]
pub fn scrambling_time(l: usize) -> HalfTime {
    assert!(l >= 2 && l.is_multiple_of(2), "L must be even");
    let half = (l / 2) as u32;
    if half.is_multiple_of(2) {
        HalfTime(half)
    } else {
        HalfTime(half + 1)
    }
}

/// Contiguous arc of sites on the ring, listed from its left end.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SiteWindow {
    pub sites: Vec<usize>,
    pub full_ring: bool,
}

impl SiteWindow {
    #[must_use]
    pub fn full(l: usize) -> Self {
        Self {
            sites: (0..l).collect(),
            full_ring: true,
        }
    }

    #[must_use]
    pub fn contains(&self, x: usize) -> bool {
        self.full_ring || self.sites.contains(&x)
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.sites.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    /// The two rightmost sites, or `None` for the full ring.
    #[must_use]
    pub fn right_front(&self) -> Option<[usize; 2]> {
        match self.sites[..] {
            _ if self.full_ring => None,
            [.., a, b] => Some([a, b]),
            _ => None,
        }
    }
}

/// Sites reachable at time `t` from a perturbation at `x0`.
///
/// For even `x0` this is `[x0-2t+1, x0+2t]`; odd `x0` sits at the right end of its first
/// gate, which mirrors the interval to `[x0-2t, x0+2t-1]`. The arc becomes the full ring
/// once its length `4t` reaches `L`.
#[must_use]
pub fn causal_window(x0: usize, t: HalfTime, l: usize) -> SiteWindow {
    let t2 = i64::from(t.0);
    if t2 == 0 {
        return SiteWindow {
            sites: vec![x0 % l],
            full_ring: l == 1,
        };
    }
    let len = 2 * t2;
    if len >= l as i64 {
        return SiteWindow::full(l);
    }
    let x0 = x0 as i64;
    let left = if x0 % 2 == 0 { x0 - t2 + 1 } else { x0 - t2 };
    SiteWindow {
        sites: (left..left + len).map(|x| x.rem_euclid(l as i64) as usize).collect(),
        full_ring: false,
    }
}
