//! Pauli-measurement distinguishability of the chain from a Haar-random unitary, through
//! the l1 distance of the transition law to the uniform law on nonzero vectors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::chain::{scrambling_time, ChainGeometry, HalfTime, PhaseVector};
use crate::error::{Error, Result};
use crate::ergodicity::{halfinteger_ergodicity_check, pattern_law_three_halves, ExactEnsemble, L1Method};
use crate::montecarlo::{McConfig, SIGMAS};
use crate::{SCHEMA, VERSION};

/// Uniform transition law on the nonzero vectors of the chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HaarReference {
    /// `1 / (2^{2NL} - 1)`.
    pub gamma: BigRational,
    /// `2^{2NL} - 1`.
    pub support: BigInt,
}

#[must_use]
pub fn haar_reference(geometry: ChainGeometry) -> HaarReference {
    let support: BigInt = (BigInt::one() << geometry.dim()) - 1;
    HaarReference {
        gamma: BigRational::new(BigInt::one(), support.clone()),
        support,
    }
}

/// How the transition law is obtained.
#[derive(Clone, Copy, Debug)]
pub enum Evaluation<'a> {
    /// Enumerated or class-exact law; available for `L = 2, N = 1`, and at `t = 3/2`
    /// for `L <= 6`.
    Exact,
    Sampled(&'a McConfig),
}

/// Distinguishing advantage bound from the worst l1 distance over the inputs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DesignReport {
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub t2: u32,
    pub exact: bool,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub streams: Option<usize>,
    pub inputs: Vec<String>,
    pub l1: Vec<f64>,
    pub worst_l1: f64,
    /// Exact rational form of `worst_l1` on the exact path.
    pub worst_l1_exact: Option<String>,
    pub worst_l1_sigma: f64,
    pub p_guess_estimate: f64,
    /// `1/2 + 8 t L 2^{-N}`.
    pub paper_bound: f64,
    /// `1/2 + 33 t L 2^{-N} / 4`.
    pub appendix_bound: f64,
    pub paper_bound_vacuous: bool,
    pub appendix_bound_vacuous: bool,
    pub pass: bool,
    pub schema: u32,
    pub version: &'static str,
}

/// One input per local-twirl orbit: `X` on site 0 and `X` on every qubit.
#[must_use]
pub fn default_inputs(geometry: ChainGeometry) -> Vec<PhaseVector> {
    vec![PhaseVector::local_x(geometry, 0), PhaseVector::full_x(geometry)]
}

fn exact_l1(u0: &PhaseVector, t: HalfTime) -> Result<BigRational> {
    let g = u0.geometry();
    if g.l() == 2 && g.n() == 1 {
        let d = ExactEnsemble::new(g)?.distribution(u0, t)?;
        let r = d.l1_to_uniform_nonzero();
        return Ok(BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom())));
    }
    if t.0 == 3 {
        return Ok(pattern_law_three_halves(u0)?.l1_to_uniform_nonzero());
    }
    Err(Error::InvalidArgument(format!(
        "no exact law for L={}, N={}, t={t}; use sampling",
        g.l(),
        g.n()
    )))
}

pub fn advantage_estimate(geometry: ChainGeometry, t: HalfTime, inputs: &[PhaseVector], evaluation: Evaluation<'_>) -> Result<DesignReport> {
    if t.is_integer() {
        return Err(Error::InvalidArgument(format!("t = {t} is not a half-integer")));
    }
    let tscr = scrambling_time(geometry.l());
    if t.0 < tscr.0 || t.0 > 2 * tscr.0 {
        return Err(Error::InvalidArgument(format!("t = {t} outside [t_scr, 2 t_scr] = [{tscr}, {}]", HalfTime(2 * tscr.0))));
    }
    if inputs.is_empty() {
        return Err(Error::InvalidArgument("input list is empty".into()));
    }
    if let Some(u) = inputs.iter().find(|u| u.geometry() != geometry || u.is_zero()) {
        return Err(Error::InvalidArgument(format!("input {} must be a nonzero vector of the chain", u.to_pauli())));
    }
    let (l1, sigmas, exact_worst) = match evaluation {
        Evaluation::Exact => {
            let exact: Vec<BigRational> = inputs.iter().map(|u| exact_l1(u, t)).collect::<Result<_>>()?;
            let worst = exact.iter().cloned().fold(BigRational::zero(), |a, b| if b > a { b } else { a });
            let l1 = exact.iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).collect();
            (l1, vec![0.0; inputs.len()], Some(worst))
        }
        Evaluation::Sampled(cfg) => {
            let mut l1 = Vec::with_capacity(inputs.len());
            let mut sigmas = Vec::with_capacity(inputs.len());
            for u in inputs {
                let r = halfinteger_ergodicity_check(u, t, cfg, L1Method::Orbit)?;
                l1.push(r.l1);
                sigmas.push(r.l1_sigma);
            }
            (l1, sigmas, None)
        }
    };
    let (worst_index, worst_l1) = l1
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::MIN), |a, (i, v)| if v > a.1 { (i, v) } else { a });
    let worst_l1_sigma = sigmas[worst_index];
    let scale = t.as_f64() * geometry.l() as f64 * (-(geometry.n() as f64)).exp2();
    let paper_bound = 0.5 + 8.0 * scale;
    let appendix_bound = 0.5 + 33.0 * scale / 4.0;
    let p_guess_estimate = (0.5 + worst_l1 / 4.0).clamp(0.5, 1.0);
    let pass = p_guess_estimate - SIGMAS * worst_l1_sigma / 4.0 <= paper_bound.min(appendix_bound);
    let (samples, seed, streams) = match evaluation {
        Evaluation::Exact => (None, None, None),
        Evaluation::Sampled(cfg) => (Some(cfg.samples), Some(cfg.seed), Some(cfg.streams)),
    };
    Ok(DesignReport {
        l: geometry.l(),
        n: geometry.n(),
        t2: t.t2(),
        exact: exact_worst.is_some(),
        samples,
        seed,
        streams,
        inputs: inputs.iter().map(PhaseVector::to_pauli).collect(),
        l1,
        worst_l1,
        worst_l1_exact: exact_worst.map(|r| r.to_string()),
        worst_l1_sigma,
        p_guess_estimate,
        paper_bound,
        appendix_bound,
        paper_bound_vacuous: paper_bound >= 1.0,
        appendix_bound_vacuous: appendix_bound >= 1.0,
        pass,
        schema: SCHEMA,
        version: VERSION,
    })
}
