use serde::Serialize;

use super::{sample_uniform, Block};
use crate::gf2::{BitMatrix, BitVector};
use crate::montecarlo::{below_bound, binomial_sigma, sample_counts, EmpiricalDistribution, McConfig, SIGMAS};

/// `min{2^k, 4} 2^{-k^2} / (1 - 2^{-2n})^k`, bounding `prob{rank E <= 2n - k}` for one block.
#[must_use]
pub fn single_rank_tail_bound(n: usize, k: usize) -> f64 {
    let k = k as f64;
    let denom = (1.0 - (-(2.0 * n as f64)).exp2()).powf(k);
    k.exp2().min(4.0) * (-(k * k)).exp2() / denom
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `2^k / (1 - 2^{-2n})^k binom(k+r-1, k) 2^{-k^2/2}`, bounding the rank tail of a product of `r` blocks.
#[must_use]
pub fn product_rank_tail_bound(n: usize, r: usize, k: usize) -> f64 {
    let kf = k as f64;
    let denom = (1.0 - (-(2.0 * n as f64)).exp2()).powf(kf);
    kf.exp2() / denom * binom(k + r - 1, k) * (-(kf * kf) / 2.0).exp2()
}

/// `8 r 2^{-n}`, bounding `prob{E_r ... E_1 u = 0}`.
#[must_use]
pub fn kernel_hit_bound(n: usize, r: usize) -> f64 {
    8.0 * r as f64 * (-(n as f64)).exp2()
}

/// Rank distribution of one block of a uniform element of `Sp(4n)` (blocks are `2n x 2n`).
#[must_use]
pub fn block_rank_histogram(n: usize, which: Block, cfg: &McConfig) -> EmpiricalDistribution<usize> {
    sample_counts(cfg, |rng| {
        let s = sample_uniform(2 * n, rng);
        s.blocks().expect("even split").get(which).rank()
    })
}

/// One line of a rank histogram with its tail comparison.
///
/// `paper_bound` bounds the tail event `rank <= rank`; `pass` compares the tail frequency
/// to it with `SIGMAS` binomial standard errors of slack.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailRow {
    pub rank: usize,
    pub count: u64,
    pub frequency: f64,
    pub tail_frequency: f64,
    pub paper_bound: f64,
    pub pass: bool,
}

/// Rows `rank = 0..=dim` where `k = dim - rank` is passed to `bound`.
pub fn tail_rows(
    hist: &EmpiricalDistribution<usize>,
    dim: usize,
    bound: impl Fn(usize) -> f64,
) -> Vec<TailRow> {
    let total = hist.total();
    let mut cumulative = 0;
    (0..=dim)
        .map(|rank| {
            let count = hist.count(&rank);
            cumulative += count;
            let tail = cumulative as f64 / total.max(1) as f64;
            let paper_bound = bound(dim - rank);
            TailRow {
                rank,
                count,
                frequency: hist.frequency(&rank),
                tail_frequency: tail,
                paper_bound,
                pass: below_bound(tail, paper_bound, total),
            }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct ProductRankReport {
    pub n: usize,
    pub r: usize,
    pub ranks: EmpiricalDistribution<usize>,
    pub kernel_hits: u64,
}

impl ProductRankReport {
    #[must_use]
    pub fn tail_rows(&self) -> Vec<TailRow> {
        tail_rows(&self.ranks, 2 * self.n, |k| product_rank_tail_bound(self.n, self.r, k))
    }

    #[must_use]
    pub fn kernel_hit_frequency(&self) -> f64 {
        self.kernel_hits as f64 / self.ranks.total().max(1) as f64
    }

    #[must_use]
    pub fn kernel_hit_pass(&self) -> bool {
        let f = self.kernel_hit_frequency();
        f <= kernel_hit_bound(self.n, self.r) + SIGMAS * binomial_sigma(f, self.ranks.total()) + 1e-12
    }
}

/// Rank of `E_r ... E_1` for independent blocks `E_i` of uniform elements of `Sp(4n)`,
/// together with whether the product annihilates a uniform nonzero `u`.
#[must_use]
pub fn product_rank_experiment(n: usize, r: usize, which: Block, cfg: &McConfig) -> ProductRankReport {
    assert!(r >= 1, "product needs at least one factor");
    let joint = sample_counts(cfg, |rng| {
        let mut prod = BitMatrix::identity(2 * n);
        for _ in 0..r {
            let s = sample_uniform(2 * n, rng);
            prod = s.blocks().expect("even split").get(which) * &prod;
        }
        let u = BitVector::random_nonzero(2 * n, rng);
        let hit = prod.mul_vec(&u).expect("sizes agree").is_zero();
        (prod.rank(), hit)
    });
    ProductRankReport {
        n,
        r,
        ranks: joint.map_keys(|&(rank, _)| rank),
        kernel_hits: joint.count_where(|&(_, hit)| hit),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_zero_tail_is_certain() {
        let cfg = McConfig::new(200, 1);
        let h = block_rank_histogram(1, Block::C, &cfg);
        let rows = tail_rows(&h, 2, |k| single_rank_tail_bound(1, k));
        assert_eq!(rows.last().unwrap().tail_frequency, 1.0);
        assert!(rows.iter().all(|r| r.pass));
    }

    #[test]
    fn bound_values() {
        assert!((single_rank_tail_bound(1, 0) - 1.0).abs() < 1e-15);
        assert!((single_rank_tail_bound(1, 2) - 4.0 / 16.0 / (0.75f64 * 0.75)).abs() < 1e-12);
        assert!((product_rank_tail_bound(3, 2, 2) - 4.0 / (63.0f64 / 64.0).powi(2) * 3.0 / 4.0).abs() < 1e-12);
        assert!((kernel_hit_bound(4, 2) - 1.0).abs() < 1e-15);
    }
}
