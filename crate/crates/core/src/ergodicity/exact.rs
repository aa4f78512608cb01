use std::collections::BTreeMap;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::chain::{ChainGeometry, DisorderRealization, HalfTime, Parity, PhaseVector};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::symplectic::{enumerate_group, SymplecticMatrix};

pub type Rational = Ratio<i64>;

/// Column images of a matrix on at most 64 bits; `apply` XORs the selected columns.
#[derive(Clone, Debug)]
struct Columns(Vec<u64>);

impl Columns {
    fn of(m: &BitMatrix) -> Self {
        Self((0..m.cols()).map(|j| m.column(j).as_u64()).collect())
    }

    fn apply(&self, mut u: u64) -> u64 {
        let mut out = 0;
        while u != 0 {
            out ^= self.0[u.trailing_zeros() as usize];
            u &= u - 1;
        }
        out
    }
}

/// Every realization of the `L = 2`, `N = 1` chain: all `720^2` ordered gate pairs,
/// each with weight one.
#[derive(Clone, Debug)]
pub struct ExactEnsemble {
    geometry: ChainGeometry,
    even: Vec<Columns>,
    odd: Vec<Columns>,
}

/// Exact outcome counts over an enumerated ensemble; keys are the chain vector as an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactDistribution {
    pub geometry: ChainGeometry,
    pub counts: BTreeMap<u64, u64>,
    pub total: u64,
}

impl ExactEnsemble {
    pub fn new(geometry: ChainGeometry) -> Result<Self> {
        if geometry.l() != 2 || geometry.n() != 1 {
            return Err(Error::InvalidArgument(format!(
                "exact enumeration is available for L=2, N=1 only, got L={}, N={}",
                geometry.l(),
                geometry.n()
            )));
        }
        let group = enumerate_group(2);
        let half = |parity: Parity| -> Vec<Columns> {
            group
                .iter()
                .map(|g| {
                    let r = DisorderRealization::new(geometry, vec![g.clone(), g.clone()])
                        .expect("gate sizes match");
                    Columns::of(&r.half_step_matrix(parity))
                })
                .collect()
        };
        Ok(Self {
            geometry,
            even: half(Parity::Even),
            odd: half(Parity::Odd),
        })
    }

    #[must_use]
    pub fn geometry(&self) -> ChainGeometry {
        self.geometry
    }

    /// Number of enumerated realizations.
    #[must_use]
    pub fn size(&self) -> u64 {
        (self.even.len() * self.odd.len()) as u64
    }

    /// Exact law of `S(t) u0`.
    pub fn distribution(&self, u0: &PhaseVector, t: HalfTime) -> Result<ExactDistribution> {
        self.dressed_distribution(u0, t, None, None)
    }

    /// Exact law of `post S(t) pre u0` for fixed chain matrices `pre`, `post`.
    pub fn dressed_distribution(
        &self,
        u0: &PhaseVector,
        t: HalfTime,
        pre: Option<&BitMatrix>,
        post: Option<&BitMatrix>,
    ) -> Result<ExactDistribution> {
        if u0.geometry() != self.geometry {
            return Err(Error::InvalidGeometry("initial vector geometry".into()));
        }
        let pre = pre.map(Columns::of);
        let post = post.map(Columns::of);
        let start = pre.as_ref().map_or(u0.bits().as_u64(), |p| p.apply(u0.bits().as_u64()));
        let counts = (0..self.even.len())
            .into_par_iter()
            .map(|g0| {
                let mut local: BTreeMap<u64, u64> = BTreeMap::new();
                for g1 in 0..self.odd.len() {
                    let mut u = start;
                    for step in 0..t.0 {
                        u = if step % 2 == 0 {
                            self.even[g0].apply(u)
                        } else {
                            self.odd[g1].apply(u)
                        };
                    }
                    if let Some(p) = &post {
                        u = p.apply(u);
                    }
                    *local.entry(u).or_insert(0) += 1;
                }
                local
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (k, n) in b {
                    *a.entry(k).or_insert(0) += n;
                }
                a
            });
        Ok(ExactDistribution {
            geometry: self.geometry,
            counts,
            total: self.size(),
        })
    }
}

impl ExactDistribution {
    #[must_use]
    pub fn count(&self, v: u64) -> u64 {
        self.counts.get(&v).copied().unwrap_or(0)
    }

    #[must_use]
    pub fn probability(&self, v: u64) -> Rational {
        Rational::new(self.count(v) as i64, self.total as i64)
    }

    /// Outcome key as a bit vector.
    #[must_use]
    pub fn key(&self, v: u64) -> BitVector {
        BitVector::from_u64(self.geometry.dim(), v)
    }

    fn site_zero(&self, v: u64, x: usize) -> bool {
        let w = self.geometry.site_bits();
        (v >> (w * x)) & ((1 << w) - 1) == 0
    }

    /// Bit `x` of the pattern is set when site `x` is nonzero.
    #[must_use]
    pub fn pattern(&self, v: u64) -> u64 {
        (0..self.geometry.l())
            .filter(|&x| !self.site_zero(v, x))
            .fold(0, |acc, x| acc | 1 << x)
    }

    /// Exact law of the zero/nonzero pattern of the sites.
    #[must_use]
    pub fn pattern_distribution(&self) -> BTreeMap<u64, Rational> {
        let mut out: BTreeMap<u64, Rational> = BTreeMap::new();
        for (&v, &n) in &self.counts {
            *out.entry(self.pattern(v)).or_insert_with(|| Rational::from_integer(0)) +=
                Rational::new(n as i64, self.total as i64);
        }
        out
    }

    /// `prob{u_x = 0}`.
    #[must_use]
    pub fn site_zero_probability(&self, x: usize) -> Rational {
        let n: u64 = self
            .counts
            .iter()
            .filter(|(&v, _)| self.site_zero(v, x))
            .map(|(_, &n)| n)
            .sum();
        Rational::new(n as i64, self.total as i64)
    }

    /// `prob{all sites nonzero}`.
    #[must_use]
    pub fn all_nonzero_probability(&self) -> Rational {
        let full = (1u64 << self.geometry.l()) - 1;
        self.pattern_distribution()
            .get(&full)
            .copied()
            .unwrap_or_else(|| Rational::from_integer(0))
    }

    /// Law of the outcome conditioned on every site being nonzero.
    #[must_use]
    pub fn conditional_all_nonzero(&self) -> BTreeMap<u64, Rational> {
        let full = (1u64 << self.geometry.l()) - 1;
        let kept: Vec<(u64, u64)> = self
            .counts
            .iter()
            .filter(|(&v, _)| self.pattern(v) == full)
            .map(|(&v, &n)| (v, n))
            .collect();
        let total: u64 = kept.iter().map(|&(_, n)| n).sum();
        kept.into_iter()
            .map(|(v, n)| (v, Rational::new(n as i64, total as i64)))
            .collect()
    }

    /// `sum_{v != 0} |P(v) - 1/(2^{2NL} - 1)|`.
    #[must_use]
    pub fn l1_to_uniform_nonzero(&self) -> Rational {
        let space = 1i64 << self.geometry.dim();
        let gamma = Rational::new(1, space - 1);
        let mut l1 = Rational::from_integer(0);
        let mut observed = 0i64;
        for (&v, _) in self.counts.iter().filter(|(&v, _)| v != 0) {
            let d = self.probability(v) - gamma;
            l1 += if d < Rational::from_integer(0) { -d } else { d };
            observed += 1;
        }
        l1 + gamma * (space - 1 - observed)
    }
}

/// `(⊕_x X_x)` as a chain matrix, site `x` receiving `locals[x]`.
#[must_use]
pub fn local_matrix(geometry: ChainGeometry, locals: &[SymplecticMatrix]) -> BitMatrix {
    let w = geometry.site_bits();
    let mut m = BitMatrix::zeros(geometry.dim(), geometry.dim());
    for (x, s) in locals.iter().enumerate() {
        m.place(w * x, w * x, s.matrix());
    }
    m
}
