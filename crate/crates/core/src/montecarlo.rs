//! Seeded, stream-parallel Monte Carlo and counting utilities.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Tolerance, in binomial standard errors, used by every statistical comparison.
pub const SIGMAS: f64 = 4.0;

pub const DEFAULT_STREAMS: usize = 8;

pub type StreamRng = ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    pub streams: usize,
}

impl McConfig {
    #[must_use]
    pub fn new(samples: u64, seed: u64) -> Self {
        Self {
            samples,
            seed,
            streams: DEFAULT_STREAMS,
        }
    }

    #[must_use]
    pub fn with_streams(mut self, streams: usize) -> Self {
        self.streams = streams.max(1);
        self
    }

    /// Samples assigned to stream `i`; the first `samples % streams` streams take one extra.
    #[must_use]
    pub fn stream_samples(&self, i: usize) -> u64 {
        let k = self.streams as u64;
        self.samples / k + u64::from((i as u64) < self.samples % k)
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed of stream `index` derived from `base`.
#[must_use]
pub fn stream_seed(base: u64, index: u64) -> u64 {
    splitmix64(base ^ splitmix64(index))
}

#[must_use]
pub fn rng_from_seed(seed: u64) -> StreamRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Runs `f(rng, samples_for_stream)` once per stream in parallel and returns the
/// results in stream order. Output depends only on `(seed, streams, samples)`.
pub fn run_streams<T, F>(cfg: &McConfig, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut StreamRng, u64) -> T + Sync,
{
    (0..cfg.streams)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_from_seed(stream_seed(cfg.seed, i as u64));
            f(&mut rng, cfg.stream_samples(i))
        })
        .collect()
}

/// Counts outcomes of `draw` over all samples of `cfg`.
pub fn sample_counts<K, F>(cfg: &McConfig, draw: F) -> EmpiricalDistribution<K>
where
    K: Ord + Send,
    F: Fn(&mut StreamRng) -> K + Sync,
{
    let parts = run_streams(cfg, |rng, n| {
        let mut d = EmpiricalDistribution::new();
        for _ in 0..n {
            d.record(draw(rng));
        }
        d
    });
    let mut out = EmpiricalDistribution::new();
    for p in parts {
        out.merge(p);
    }
    out.seed = Some(cfg.seed);
    out.streams = Some(cfg.streams);
    out
}

/// Binomial standard error of a frequency `p` over `n` trials.
#[must_use]
pub fn binomial_sigma(p: f64, n: u64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    (p * (1.0 - p) / n as f64).max(0.0).sqrt()
}

/// Whether an observed frequency is within `SIGMAS` standard errors of `p`.
#[must_use]
pub fn within_sigmas(observed: f64, p: f64, n: u64) -> bool {
    (observed - p).abs() <= SIGMAS * binomial_sigma(p, n) + 1e-12
}

/// Whether an observed frequency is at most `bound` plus `SIGMAS` standard errors.
#[must_use]
pub fn below_bound(observed: f64, bound: f64, n: u64) -> bool {
    observed <= bound + SIGMAS * binomial_sigma(observed, n) + 1e-12
}

/// Counted outcomes with the sampling metadata that produced them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmpiricalDistribution<K> {
    counts: BTreeMap<K, u64>,
    total: u64,
    pub seed: Option<u64>,
    pub streams: Option<usize>,
}

impl<K: Ord> Default for EmpiricalDistribution<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord> EmpiricalDistribution<K> {
    #[must_use]
    pub fn new() -> Self {
        Self {
            counts: BTreeMap::new(),
            total: 0,
            seed: None,
            streams: None,
        }
    }

    pub fn record(&mut self, key: K) {
        self.record_n(key, 1);
    }

    pub fn record_n(&mut self, key: K, n: u64) {
        if n > 0 {
            *self.counts.entry(key).or_insert(0) += n;
            self.total += n;
        }
    }

    pub fn merge(&mut self, other: Self) {
        for (k, n) in other.counts {
            self.record_n(k, n);
        }
    }

    #[must_use]
    pub fn total(&self) -> u64 {
        self.total
    }

    #[must_use]
    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    #[must_use]
    pub fn count(&self, key: &K) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    #[must_use]
    pub fn frequency(&self, key: &K) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        self.count(key) as f64 / self.total as f64
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, u64)> {
        self.counts.iter().map(|(k, &n)| (k, n))
    }

    /// Total count of outcomes satisfying `pred`.
    pub fn count_where(&self, mut pred: impl FnMut(&K) -> bool) -> u64 {
        self.iter().filter(|(k, _)| pred(k)).map(|(_, n)| n).sum()
    }

    pub fn map_keys<K2: Ord>(&self, mut f: impl FnMut(&K) -> K2) -> EmpiricalDistribution<K2> {
        let mut out = EmpiricalDistribution::new();
        for (k, n) in self.iter() {
            out.record_n(f(k), n);
        }
        out.seed = self.seed;
        out.streams = self.streams;
        out
    }
}
