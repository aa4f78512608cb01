use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::reference::{l1_histogram, l1_orbit, L1Estimate, OrbitPartition, UniformReference};
use super::{bounds, ErgodicityReport, L1Method, HISTOGRAM_MAX_BITS, SCHEMA, VERSION};
use crate::chain::{build_disorder, DisorderRealization, causal_window, scrambling_time, HalfTime, PhaseVector, SiteWindow};
use crate::error::{Error, Result};
use crate::gf2::{form_of, BitMatrix, BitVector};
use crate::montecarlo::{binomial_sigma, below_bound, sample_counts, EmpiricalDistribution, McConfig, SIGMAS};

fn require_nonzero(u0: &PhaseVector) -> Result<()> {
    if u0.is_zero() {
        return Err(Error::InvalidArgument("initial vector must be nonzero".into()));
    }
    Ok(())
}

/// Counts of `S(t) u0` over random realizations, keyed by the projection onto `restrict`
/// or by the whole chain vector.
pub fn transition_histogram(
    u0: &PhaseVector,
    t: HalfTime,
    cfg: &McConfig,
    restrict: Option<&[usize]>,
) -> Result<EmpiricalDistribution<BitVector>> {
    require_nonzero(u0)?;
    let g = u0.geometry();
    if let Some(&x) = restrict.and_then(|r| r.iter().find(|&&x| x >= g.l())) {
        return Err(Error::InvalidArgument(format!("site {x} outside ring of {}", g.l())));
    }
    Ok(sample_counts(cfg, |rng| {
        let u = build_disorder(g, rng).evolve(u0, t).expect("geometry checked");
        match restrict {
            Some(sites) => u.project(sites),
            None => u.into_bits(),
        }
    }))
}

/// What one l1 experiment measures: the key sites, the reference law on them, and the
/// orbit classes of the sampled law.
struct Target<'a> {
    sites: Vec<usize>,
    reference: UniformReference,
    partition: OrbitPartition,
    window: Option<&'a SiteWindow>,
}

struct Measured {
    estimate: L1Estimate,
    restricted_to: Option<Vec<usize>>,
    all_nonzero: f64,
}

fn measure(u0: &PhaseVector, t: HalfTime, cfg: &McConfig, method: L1Method, target: Target<'_>) -> Result<Measured> {
    let g = u0.geometry();
    let w = g.site_bits();
    let (sites, reference, restricted_to) = match method {
        L1Method::Histogram if target.sites.len() * w > HISTOGRAM_MAX_BITS => {
            let k = HISTOGRAM_MAX_BITS / w;
            if k == 0 {
                return Err(Error::InvalidArgument(format!(
                    "a single site has {w} bits, above the {HISTOGRAM_MAX_BITS}-bit histogram limit"
                )));
            }
            let kept = target.sites[..k].to_vec();
            (kept.clone(), target.reference.restrict(k), Some(kept))
        }
        _ => (target.sites.clone(), target.reference.clone(), None),
    };
    let window = target.window;
    let partition = &target.partition;
    let orbit = method == L1Method::Orbit;
    let counts = sample_counts(cfg, |rng| {
        let u = build_disorder(g, rng).evolve(u0, t).expect("geometry checked");
        let outside = window.is_some_and(|win| u.support().iter().any(|&x| !win.contains(x)));
        let all = (0..g.l()).all(|x| !u.site_is_zero(x));
        let key = u.project(&sites);
        let key = if orbit { partition.classify(&key) } else { key };
        (outside, all, key)
    });
    if counts.count_where(|k| k.0) > 0 {
        return Err(Error::CausalityViolation(format!(
            "{} samples left the causal window",
            counts.count_where(|k| k.0)
        )));
    }
    let all_nonzero = counts.count_where(|k| k.1) as f64 / counts.total().max(1) as f64;
    let keys = counts.map_keys(|k| k.2.clone());
    let estimate = if orbit {
        l1_orbit(&keys, &reference, partition)?
    } else {
        l1_histogram(&keys, &reference)?
    };
    Ok(Measured {
        estimate,
        restricted_to,
        all_nonzero,
    })
}

#[allow(clippy::too_many_arguments)]
fn report(
    experiment: &str,
    u0: &PhaseVector,
    t: HalfTime,
    cfg: &McConfig,
    method: L1Method,
    window: Vec<usize>,
    m: &Measured,
    bound_main: f64,
    bound_appendix: f64,
    extra: BTreeMap<String, f64>,
) -> ErgodicityReport {
    let g = u0.geometry();
    ErgodicityReport {
        experiment: experiment.to_string(),
        l: g.l(),
        n: g.n(),
        t2: t.0,
        samples: cfg.samples,
        seed: cfg.seed,
        streams: cfg.streams,
        initial: u0.to_pauli(),
        method,
        window,
        restricted_to: m.restricted_to.clone(),
        l1: m.estimate.l1,
        l1_sigma: m.estimate.sigma,
        bound_main,
        bound_appendix,
        vacuous: bound_appendix >= 2.0,
        pass: m.estimate.l1 <= bound_appendix + SIGMAS * m.estimate.sigma + 1e-12,
        extra,
        schema: SCHEMA,
        version: VERSION,
    }
}

fn partition_for(u0: &PhaseVector, t: HalfTime, sites: &[usize]) -> OrbitPartition {
    let w = u0.geometry().site_bits();
    if t.is_integer() {
        let reference: Vec<BitVector> = sites.iter().map(|&x| u0.site(x)).collect();
        OrbitPartition::relative(w, &reference)
    } else {
        OrbitPartition::pattern(w, sites.len())
    }
}

/// Distance of `P_t(.|u0)`, `u0` local at `x0`, to the uniform law on nonzero vectors of
/// the causal window.
pub fn weak_ergodicity_check(
    x0: usize,
    t: HalfTime,
    geometry: crate::chain::ChainGeometry,
    cfg: &McConfig,
    method: L1Method,
) -> Result<ErgodicityReport> {
    if x0 >= geometry.l() {
        return Err(Error::InvalidArgument(format!("site {x0} outside ring of {}", geometry.l())));
    }
    let tscr = scrambling_time(geometry.l());
    if t.0 == 0 || t.0 > 2 * tscr.0 {
        return Err(Error::InvalidArgument(format!("t = {t} outside [1/2, 2 t_scr = {}]", HalfTime(2 * tscr.0))));
    }
    let u0 = PhaseVector::local_x(geometry, x0);
    let window = causal_window(x0, t, geometry.l());
    let sites = window.sites.clone();
    let m = measure(
        &u0,
        t,
        cfg,
        method,
        Target {
            reference: UniformReference::nonzero_on(geometry.site_bits(), vec![true; sites.len()]),
            partition: partition_for(&u0, t, &sites),
            sites: sites.clone(),
            window: Some(&window),
        },
    )?;
    let tf = t.as_f64();
    let mut extra = BTreeMap::new();
    extra.insert("all_nonzero".into(), m.all_nonzero);
    Ok(report(
        "weak",
        &u0,
        t,
        cfg,
        method,
        sites,
        &m,
        bounds::weak_main(tf, geometry.n()),
        bounds::weak_appendix(tf, geometry.l(), geometry.n(), !window.full_ring),
        extra,
    ))
}

/// Distance of `P_t(.|u0)` at half-integer `t` in `[t_scr, 2 t_scr]` to the uniform law on
/// all nonzero chain vectors.
pub fn halfinteger_ergodicity_check(u0: &PhaseVector, t: HalfTime, cfg: &McConfig, method: L1Method) -> Result<ErgodicityReport> {
    require_nonzero(u0)?;
    let g = u0.geometry();
    if t.is_integer() {
        return Err(Error::InvalidArgument(format!("t = {t} is not a half-integer")));
    }
    let tscr = scrambling_time(g.l());
    if t.0 < tscr.0 || t.0 > 2 * tscr.0 {
        return Err(Error::InvalidArgument(format!("t = {t} outside [t_scr, 2 t_scr] = [{tscr}, {}]", HalfTime(2 * tscr.0))));
    }
    let sites: Vec<usize> = (0..g.l()).collect();
    let m = measure(
        u0,
        t,
        cfg,
        method,
        Target {
            reference: UniformReference::nonzero_on(g.site_bits(), vec![true; g.l()]),
            partition: OrbitPartition::pattern(g.site_bits(), g.l()),
            sites: sites.clone(),
            window: None,
        },
    )?;
    let tf = t.as_f64();
    let mut extra = BTreeMap::new();
    extra.insert("all_nonzero".into(), m.all_nonzero);
    extra.insert("all_nonzero_bound".into(), bounds::all_nonzero(tf, g.l(), g.n()));
    Ok(report(
        "half",
        u0,
        t,
        cfg,
        method,
        sites,
        &m,
        bounds::half_main(tf, g.l(), g.n()),
        bounds::half_appendix(tf, g.l(), g.n()),
        extra,
    ))
}

fn check_region(u0: &PhaseVector, ls: usize, t: HalfTime) -> Result<()> {
    let g = u0.geometry();
    if ls == 0 || !ls.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("region length {ls} must be even and positive")));
    }
    if !t.is_integer() || t.0 == 0 {
        return Err(Error::InvalidArgument(format!("t = {t} must be a positive integer")));
    }
    if ls >= g.l() || 2 * t.0 as usize > g.l() - ls {
        return Err(Error::InvalidArgument(format!(
            "need t <= (L - Ls)/4, got t = {t}, L = {}, Ls = {ls}",
            g.l()
        )));
    }
    if let Some(x) = (0..ls).find(|&x| u0.site_is_zero(x)) {
        return Err(Error::InvalidArgument(format!("initial vector vanishes on region site {x}")));
    }
    Ok(())
}

/// Distance of the projection of `S(t) u0` onto sites `0..ls` to the uniform law on all
/// vectors of that region, zero included.
pub fn subsystem_check(u0: &PhaseVector, ls: usize, t: HalfTime, cfg: &McConfig, method: L1Method) -> Result<ErgodicityReport> {
    check_region(u0, ls, t)?;
    let g = u0.geometry();
    let sites: Vec<usize> = (0..ls).collect();
    let m = measure(
        u0,
        t,
        cfg,
        method,
        Target {
            reference: UniformReference::full_space(g.site_bits(), ls),
            partition: partition_for(u0, t, &sites),
            sites: sites.clone(),
            window: None,
        },
    )?;
    let tf = t.as_f64();
    Ok(report(
        "subsystem",
        u0,
        t,
        cfg,
        method,
        sites,
        &m,
        bounds::subsystem_main(tf, ls, g.n()),
        bounds::subsystem_appendix(tf, ls, g.l(), g.n()),
        BTreeMap::new(),
    ))
}

/// One row of a per-site zero-frequency table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroRow {
    pub site: usize,
    pub zeros: u64,
    pub frequency: f64,
    pub sigma: f64,
    pub bound: Option<f64>,
    pub pass: bool,
}

/// `prob{u_x^t = 0}` for every site, with the applicable bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroSiteTable {
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub t2: u32,
    pub samples: u64,
    pub seed: u64,
    pub streams: usize,
    pub initial: String,
    pub rows: Vec<ZeroRow>,
    pub all_nonzero: f64,
    pub all_nonzero_bound: Option<f64>,
    pub pass: bool,
    pub schema: u32,
    pub version: &'static str,
}

impl ZeroSiteTable {
    /// CSV with columns `site,zeros,frequency,sigma,bound,pass`.
    #[must_use]
    pub fn to_csv(&self) -> String {
        let mut s = String::from("site,zeros,frequency,sigma,bound,pass\r\n");
        for r in &self.rows {
            let bound = r.bound.map_or(String::new(), |b| b.to_string());
            s.push_str(&format!("{},{},{},{},{},{}\r\n", r.site, r.zeros, r.frequency, r.sigma, bound, r.pass));
        }
        s
    }
}

/// Per-site zero frequencies of `S(t) u0`.
///
/// A single-site `u0` at an even site gets the bound `2t 2^{-2N}` at the two rightmost
/// sites of its causal window; a `u0` nonzero on every site gets `16t 2^{-N}` at every
/// site and `1 - 16tL 2^{-N}` on the all-nonzero event.
pub fn zero_site_stats(u0: &PhaseVector, t: HalfTime, cfg: &McConfig) -> Result<ZeroSiteTable> {
    require_nonzero(u0)?;
    let g = u0.geometry();
    let patterns = sample_counts(cfg, |rng| {
        let u = build_disorder(g, rng).evolve(u0, t).expect("geometry checked");
        let mut zero = BitVector::zeros(g.l());
        for x in 0..g.l() {
            zero.set(x, u.site_is_zero(x));
        }
        zero
    });
    zero_table(u0, t, cfg, &patterns)
}

/// Zero pattern of `S(t) u0` for one fixed realization, as a table over one sample.
pub fn zero_site_stats_fixed(realization: &DisorderRealization, u0: &PhaseVector, t: HalfTime) -> Result<ZeroSiteTable> {
    require_nonzero(u0)?;
    let u = realization.evolve(u0, t)?;
    let mut zero = BitVector::zeros(u.geometry().l());
    for x in 0..u.geometry().l() {
        zero.set(x, u.site_is_zero(x));
    }
    let mut patterns = EmpiricalDistribution::new();
    patterns.record(zero);
    zero_table(u0, t, &McConfig::new(1, 0).with_streams(1), &patterns)
}

pub(crate) fn zero_table(
    u0: &PhaseVector,
    t: HalfTime,
    cfg: &McConfig,
    patterns: &EmpiricalDistribution<BitVector>,
) -> Result<ZeroSiteTable> {
    let g = u0.geometry();
    let tf = t.as_f64();
    let support = u0.support();
    let full = support.len() == g.l();
    let front = match support[..] {
        [x0] if x0 % 2 == 0 && t.0 > 0 => causal_window(x0, t, g.l()).right_front(),
        _ => None,
    };
    let total = patterns.total();
    let rows: Vec<ZeroRow> = (0..g.l())
        .map(|x| {
            let zeros = patterns.count_where(|z| z.get(x));
            let frequency = zeros as f64 / total.max(1) as f64;
            let bound = if full && t.0 > 0 {
                Some(bounds::zero_full(tf, g.n()))
            } else if front.is_some_and(|f| f.contains(&x)) {
                Some(bounds::zero_local(tf, g.n()))
            } else {
                None
            };
            ZeroRow {
                site: x,
                zeros,
                frequency,
                sigma: binomial_sigma(frequency, total),
                bound,
                pass: bound.is_none_or(|b| below_bound(frequency, b, total)),
            }
        })
        .collect();
    let all_nonzero = patterns.count_where(BitVector::is_zero) as f64 / total.max(1) as f64;
    let all_nonzero_bound = (full && t.0 > 0).then(|| bounds::all_nonzero(tf, g.l(), g.n()));
    let all_pass = all_nonzero_bound
        .is_none_or(|b| all_nonzero + SIGMAS * binomial_sigma(all_nonzero, total) + 1e-12 >= b);
    Ok(ZeroSiteTable {
        l: g.l(),
        n: g.n(),
        t2: t.0,
        samples: total,
        seed: cfg.seed,
        streams: cfg.streams,
        initial: u0.to_pauli(),
        pass: all_pass && rows.iter().all(|r| r.pass),
        rows,
        all_nonzero,
        all_nonzero_bound,
        schema: SCHEMA,
        version: VERSION,
    })
}

/// Law of the form bits `s_x = <u_x^t, u_x^0>`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhaseReport {
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub t2: u32,
    pub samples: u64,
    pub seed: u64,
    pub streams: usize,
    pub sites: Vec<usize>,
    /// `(bits, count, frequency)` with bit `k` of `bits` holding `s` at `sites[k]`.
    pub joint: Vec<(u64, u64, f64)>,
    /// Largest frequency checked against `bound`.
    pub checked: f64,
    pub sigma: f64,
    pub bound: f64,
    pub pass: bool,
    pub schema: u32,
    pub version: &'static str,
}

fn phase_counts(u0: &PhaseVector, t: HalfTime, sites: &[usize], cfg: &McConfig) -> EmpiricalDistribution<u64> {
    let g = u0.geometry();
    let seeds: Vec<BitVector> = sites.iter().map(|&x| u0.site(x)).collect();
    sample_counts(cfg, |rng| {
        let u = build_disorder(g, rng).evolve(u0, t).expect("geometry checked");
        sites
            .iter()
            .zip(&seeds)
            .enumerate()
            .fold(0u64, |acc, (k, (&x, r))| acc | u64::from(form_of(&u.site(x), r)) << k)
    })
}

fn phase_report(
    u0: &PhaseVector,
    t: HalfTime,
    cfg: &McConfig,
    sites: Vec<usize>,
    counts: &EmpiricalDistribution<u64>,
    checked: f64,
    bound: f64,
) -> PhaseReport {
    let g = u0.geometry();
    let total = counts.total();
    PhaseReport {
        l: g.l(),
        n: g.n(),
        t2: t.0,
        samples: total,
        seed: cfg.seed,
        streams: cfg.streams,
        sites,
        joint: counts.iter().map(|(&k, n)| (k, n, n as f64 / total.max(1) as f64)).collect(),
        checked,
        sigma: binomial_sigma(checked, total),
        bound,
        pass: below_bound(checked, bound, total),
        schema: SCHEMA,
        version: VERSION,
    }
}

/// Joint law of `s_0 .. s_{ls-1}`; the largest probability is compared with
/// `2^{-Ls} + 32t 3^{Ls/2+1} 2^{-N}`.
pub fn phase_statistics(u0: &PhaseVector, ls: usize, t: HalfTime, cfg: &McConfig) -> Result<PhaseReport> {
    check_region(u0, ls, t)?;
    if ls > 63 {
        return Err(Error::InvalidArgument("at most 63 region sites".into()));
    }
    let sites: Vec<usize> = (0..ls).collect();
    let counts = phase_counts(u0, t, &sites, cfg);
    let max = counts.iter().map(|(k, _)| counts.frequency(k)).fold(0.0, f64::max);
    Ok(phase_report(
        u0,
        t,
        cfg,
        sites,
        &counts,
        max,
        bounds::phases_joint(t.as_f64(), ls, u0.geometry().n()),
    ))
}

/// Law of `s_x` at one site; `prob{s_x = 0}` is compared with `1/2 + 8t 2^{-N}`.
pub fn single_site_phase(u0: &PhaseVector, x: usize, t: HalfTime, cfg: &McConfig) -> Result<PhaseReport> {
    let g = u0.geometry();
    if x >= g.l() || u0.site_is_zero(x) {
        return Err(Error::InvalidArgument(format!("initial vector must be nonzero at site {x}")));
    }
    if !t.is_integer() || t.0 == 0 {
        return Err(Error::InvalidArgument(format!("t = {t} must be a positive integer")));
    }
    let counts = phase_counts(u0, t, &[x], cfg);
    let p0 = counts.frequency(&0);
    Ok(phase_report(u0, t, cfg, vec![x], &counts, p0, bounds::single_phase(t.as_f64(), g.n())))
}

/// Fixed local maps applied around `S(t)`: the dressed evolution is `post S(t) pre`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dressing {
    /// `pre = X`, `post = X^{-1}`, with `X` the direct sum of the given site maps.
    Conjugation(BitMatrix),
    /// Independent `pre` and `post` site-local maps.
    TwoSided { pre: BitMatrix, post: BitMatrix },
}

impl Dressing {
    fn matrices(&self) -> Result<(BitMatrix, BitMatrix)> {
        match self {
            Self::Conjugation(x) => {
                let inv = x
                    .inverse()
                    .ok_or_else(|| Error::InvalidArgument("dressing is not invertible".into()))?;
                Ok((x.clone(), inv))
            }
            Self::TwoSided { pre, post } => Ok((pre.clone(), post.clone())),
        }
    }
}

/// Statistic compared between the plain and the dressed evolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwirlStatistic {
    /// Projection of the outcome onto the given sites.
    TransitionWindow(Vec<usize>),
    /// Zero pattern of the outcome, one bit per site.
    ZeroSites,
}

impl TwirlStatistic {
    fn key(&self, u: &PhaseVector) -> BitVector {
        match self {
            Self::TransitionWindow(sites) => u.project(sites),
            Self::ZeroSites => {
                let l = u.geometry().l();
                let mut z = BitVector::zeros(l);
                for x in 0..l {
                    z.set(x, u.site_is_zero(x));
                }
                z
            }
        }
    }
}

/// One bin of a twirl comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TwirlBin {
    pub key: String,
    pub plain: u64,
    pub dressed: u64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TwirlReport {
    pub t2: u32,
    pub samples: u64,
    pub seed: u64,
    pub streams: usize,
    pub bins: Vec<TwirlBin>,
    pub identical: bool,
    pub pass: bool,
    pub schema: u32,
    pub version: &'static str,
}

/// Compares a statistic of `S(t) u0` with the same statistic of `post S(t) pre u0`
/// over the same realizations; each bin must agree within `SIGMAS` standard errors of
/// the difference of two frequencies.
pub fn twirl_invariance_test(
    statistic: &TwirlStatistic,
    u0: &PhaseVector,
    t: HalfTime,
    dressing: &Dressing,
    cfg: &McConfig,
) -> Result<TwirlReport> {
    require_nonzero(u0)?;
    let g = u0.geometry();
    let (pre, post) = dressing.matrices()?;
    if pre.rows() != g.dim() || post.rows() != g.dim() || !pre.is_square() || !post.is_square() {
        return Err(Error::InvalidArgument(format!("dressing must be {0}x{0}", g.dim())));
    }
    if let TwirlStatistic::TransitionWindow(sites) = statistic {
        if sites.iter().any(|&x| x >= g.l()) {
            return Err(Error::InvalidArgument("window site outside the ring".into()));
        }
    }
    let start = PhaseVector::from_bits(g, pre.mul_vec(u0.bits())?)?;
    let counts = sample_counts(cfg, |rng| {
        let r = build_disorder(g, rng);
        let plain = r.evolve(u0, t).expect("geometry checked");
        let dressed = r.evolve(&start, t).expect("geometry checked");
        let dressed = PhaseVector::from_bits(g, post.mul_vec(dressed.bits()).expect("square")).expect("length");
        (statistic.key(&plain), statistic.key(&dressed))
    });
    let plain = counts.map_keys(|k| k.0.clone());
    let dressed = counts.map_keys(|k| k.1.clone());
    let keys: BTreeSet<&BitVector> = plain.iter().chain(dressed.iter()).map(|(k, _)| k).collect();
    let n = counts.total();
    let bins: Vec<TwirlBin> = keys
        .into_iter()
        .map(|k| {
            let (a, b) = (plain.count(k), dressed.count(k));
            let (pa, pb) = (plain.frequency(k), dressed.frequency(k));
            let sigma = (binomial_sigma(pa, n).powi(2) + binomial_sigma(pb, n).powi(2)).sqrt();
            TwirlBin {
                key: k.to_string(),
                plain: a,
                dressed: b,
                pass: (pa - pb).abs() <= SIGMAS * sigma + 1.0 / n.max(1) as f64,
            }
        })
        .collect();
    Ok(TwirlReport {
        t2: t.0,
        samples: n,
        seed: cfg.seed,
        streams: cfg.streams,
        identical: bins.iter().all(|b| b.plain == b.dressed),
        pass: bins.iter().all(|b| b.pass),
        bins,
        schema: SCHEMA,
        version: VERSION,
    })
}
