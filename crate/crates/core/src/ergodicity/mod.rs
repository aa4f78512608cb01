//! Transition distributions `P_t(u'|u)` and their distance to uniform.

mod checks;
mod classes;
pub mod exact;
mod reference;

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::Serialize;

use crate::chain::{ChainGeometry, PhaseVector};
use crate::error::{Error, Result};

pub use checks::{
    halfinteger_ergodicity_check, phase_statistics, single_site_phase, subsystem_check,
    transition_histogram, twirl_invariance_test, weak_ergodicity_check, zero_site_stats, zero_site_stats_fixed, Dressing,
    PhaseReport, TwirlBin, TwirlReport, TwirlStatistic, ZeroRow, ZeroSiteTable,
};
pub use classes::{pattern_law_three_halves, PatternLaw};
pub use exact::{ExactDistribution, ExactEnsemble, Rational};
pub use reference::{l1_histogram, l1_orbit, l1_to_uniform, L1Estimate, OrbitPartition, SiteClass, UniformReference};

pub use crate::{SCHEMA, VERSION};

/// Largest key, in bits, for which a raw outcome histogram is used.
pub const HISTOGRAM_MAX_BITS: usize = 24;

/// How the l1 distance is estimated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum L1Method {
    /// Frequencies of twirl-orbit classes, each weighted by its exact reference mass.
    Orbit,
    /// Raw outcome histogram; keys wider than 24 bits are restricted to a window.
    Histogram,
}

/// Initial vector of an experiment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InitialState {
    /// `X` on the first qubit of one site.
    Local(usize),
    /// `X` on every qubit.
    Full,
    Pauli(String),
}

impl InitialState {
    pub fn resolve(&self, geometry: ChainGeometry) -> Result<PhaseVector> {
        match self {
            Self::Local(x) if *x < geometry.l() => Ok(PhaseVector::local_x(geometry, *x)),
            Self::Local(x) => Err(Error::InvalidArgument(format!(
                "site {x} outside ring of {}",
                geometry.l()
            ))),
            Self::Full => Ok(PhaseVector::full_x(geometry)),
            Self::Pauli(s) => PhaseVector::from_pauli(geometry, s),
        }
    }
}

impl FromStr for InitialState {
    type Err = Error;

    /// `local:x`, `full`, or a Pauli string.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "full" {
            return Ok(Self::Full);
        }
        if let Some(x) = s.strip_prefix("local:") {
            return x
                .trim()
                .parse()
                .map(Self::Local)
                .map_err(|_| Error::Parse(format!("bad site in {s:?}")));
        }
        Ok(Self::Pauli(s.to_string()))
    }
}

/// Outcome of one ergodicity experiment.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErgodicityReport {
    pub experiment: String,
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub t2: u32,
    pub samples: u64,
    pub seed: u64,
    pub streams: usize,
    pub initial: String,
    pub method: L1Method,
    pub window: Vec<usize>,
    pub restricted_to: Option<Vec<usize>>,
    pub l1: f64,
    pub l1_sigma: f64,
    pub bound_main: f64,
    pub bound_appendix: f64,
    pub vacuous: bool,
    pub pass: bool,
    pub extra: BTreeMap<String, f64>,
    pub schema: u32,
    pub version: &'static str,
}

/// Closed-form bounds from the mixing lemmas.
pub mod bounds {
    fn p2(x: f64) -> f64 {
        x.exp2()
    }

    /// `130 t^2 2^{-N}`.
    #[must_use]
    pub fn weak_main(t: f64, n: usize) -> f64 {
        130.0 * t * t * p2(-(n as f64))
    }

    /// `32 t (L+1) 2^{-N} + L 2^{-2N}`, with `L -> 4t` before scrambling.
    #[must_use]
    pub fn weak_appendix(t: f64, l: usize, n: usize, before_scrambling: bool) -> f64 {
        let l = if before_scrambling { 4.0 * t } else { l as f64 };
        32.0 * t * (l + 1.0) * p2(-(n as f64)) + l * p2(-2.0 * n as f64)
    }

    /// `33 t L 2^{-N}`.
    #[must_use]
    pub fn half_main(t: f64, l: usize, n: usize) -> f64 {
        33.0 * t * l as f64 * p2(-(n as f64))
    }

    /// `32 t L 2^{-N} + L 2^{-2N}`.
    #[must_use]
    pub fn half_appendix(t: f64, l: usize, n: usize) -> f64 {
        32.0 * t * l as f64 * p2(-(n as f64)) + l as f64 * p2(-2.0 * n as f64)
    }

    /// `34 t 2^{c Ls - N}` with `c = log2 sqrt(3)`.
    #[must_use]
    pub fn subsystem_main(t: f64, ls: usize, n: usize) -> f64 {
        34.0 * t * 3f64.powf(ls as f64 / 2.0) * p2(-(n as f64))
    }

    /// `32 t 2^{-N} (2 Ls + 3^{Ls/2+1}) + 4 L 2^{-2N}`.
    #[must_use]
    pub fn subsystem_appendix(t: f64, ls: usize, l: usize, n: usize) -> f64 {
        32.0 * t * p2(-(n as f64)) * (2.0 * ls as f64 + 3f64.powf(ls as f64 / 2.0 + 1.0))
            + 4.0 * l as f64 * p2(-2.0 * n as f64)
    }

    /// `2^{-Ls} + 32 t 3^{Ls/2+1} 2^{-N}`.
    #[must_use]
    pub fn phases_joint(t: f64, ls: usize, n: usize) -> f64 {
        p2(-(ls as f64)) + 32.0 * t * 3f64.powf(ls as f64 / 2.0 + 1.0) * p2(-(n as f64))
    }

    /// `1/2 + 8 t 2^{-N}`.
    #[must_use]
    pub fn single_phase(t: f64, n: usize) -> f64 {
        0.5 + 8.0 * t * p2(-(n as f64))
    }

    /// `q_t <= 2 t 2^{-2N}` at the two rightmost lightcone sites.
    #[must_use]
    pub fn zero_local(t: f64, n: usize) -> f64 {
        2.0 * t * p2(-2.0 * n as f64)
    }

    /// `16 t 2^{-N}` for a fully supported initial vector.
    #[must_use]
    pub fn zero_full(t: f64, n: usize) -> f64 {
        16.0 * t * p2(-(n as f64))
    }

    /// `1 - 16 t L 2^{-N}`, lower bound on `prob{all sites nonzero}`.
    #[must_use]
    pub fn all_nonzero(t: f64, l: usize, n: usize) -> f64 {
        1.0 - 16.0 * t * l as f64 * p2(-(n as f64))
    }
}
