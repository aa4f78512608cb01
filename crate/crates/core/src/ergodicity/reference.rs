use std::f64::consts::LN_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{form_of, BitVector};
use crate::montecarlo::{binomial_sigma, EmpiricalDistribution};

/// Partition of one site's vectors into classes on which a twirled distribution is constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SiteClass {
    /// Zero or nonzero.
    Pattern,
    /// Zero, equal to `r`, nonzero with `<v,r> = 0`, or `<v,r> = 1`.
    Relative(BitVector),
}

impl SiteClass {
    fn classify(&self, v: &BitVector) -> u8 {
        if v.is_zero() {
            return 0;
        }
        match self {
            Self::Pattern => 1,
            Self::Relative(r) if v == r => 1,
            Self::Relative(r) => 2 + u8::from(form_of(v, r)),
        }
    }

    /// Natural log of the class size, `None` for an empty class.
    fn ln_size(&self, class: u8, bits: usize) -> Option<f64> {
        let b = bits as f64;
        let size = match (self, class) {
            (_, 0) => return Some(0.0),
            (Self::Pattern, 1) => return Some(b * LN_2 + (-(-b).exp2()).ln_1p()),
            (Self::Relative(_), 1) => 1.0,
            (Self::Relative(_), 2) => (b - 1.0).exp2() - 2.0,
            (Self::Relative(_), 3) => return Some((b - 1.0) * LN_2),
            _ => 0.0,
        };
        (size > 0.0).then(|| size.ln())
    }
}

/// Per-site classes for keys made of `sites.len()` consecutive site blocks of `bits` bits.
///
/// Valid whenever the sampled distribution is invariant under local symplectic maps that
/// act transitively inside each class: at half-integer times every nonzero site vector is
/// equivalent (`Pattern`), at integer times only maps fixing the initial site vector are
/// available (`Relative`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    bits: usize,
    sites: Vec<SiteClass>,
}

impl OrbitPartition {
    #[must_use]
    pub fn pattern(site_bits: usize, sites: usize) -> Self {
        Self {
            bits: site_bits,
            sites: vec![SiteClass::Pattern; sites],
        }
    }

    /// `Relative(r)` where `r` is nonzero and `Pattern` where it is zero.
    #[must_use]
    pub fn relative(site_bits: usize, reference: &[BitVector]) -> Self {
        Self {
            bits: site_bits,
            sites: reference
                .iter()
                .map(|r| {
                    if r.is_zero() {
                        SiteClass::Pattern
                    } else {
                        SiteClass::Relative(r.clone())
                    }
                })
                .collect(),
        }
    }

    #[must_use]
    pub fn sites(&self) -> usize {
        self.sites.len()
    }

    /// Class key: two bits per site holding the site class.
    #[must_use]
    pub fn classify(&self, key: &BitVector) -> BitVector {
        assert_eq!(key.len(), self.bits * self.sites.len(), "key length");
        let mut out = BitVector::zeros(2 * self.sites.len());
        for (k, c) in self.sites.iter().enumerate() {
            let id = c.classify(&key.slice(self.bits * k, self.bits));
            out.set(2 * k, id & 1 == 1);
            out.set(2 * k + 1, id & 2 == 2);
        }
        out
    }

    fn site_class(class: &BitVector, k: usize) -> u8 {
        u8::from(class.get(2 * k)) | u8::from(class.get(2 * k + 1)) << 1
    }
}

/// Uniform distribution over the vectors of a set of window sites, optionally without the
/// zero vector, possibly marginalized onto a subset of them.
///
/// Keys have `window.len()` site blocks; a key site flagged `false` lies outside the
/// window and must be zero. `hidden` counts window sites that were projected out.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UniformReference {
    pub site_bits: usize,
    pub window: Vec<bool>,
    pub hidden: usize,
    pub include_zero: bool,
}

impl UniformReference {
    /// Uniform over nonzero vectors supported on the flagged sites.
    #[must_use]
    pub fn nonzero_on(site_bits: usize, window: Vec<bool>) -> Self {
        Self {
            site_bits,
            window,
            hidden: 0,
            include_zero: false,
        }
    }

    /// Uniform over every vector of `sites` site blocks, zero included.
    #[must_use]
    pub fn full_space(site_bits: usize, sites: usize) -> Self {
        Self {
            site_bits,
            window: vec![true; sites],
            hidden: 0,
            include_zero: true,
        }
    }

    /// Marginal on `sites` key sites of the uniform nonzero law on `sites + hidden` sites.
    #[must_use]
    pub fn nonzero_marginal(site_bits: usize, sites: usize, hidden: usize) -> Self {
        Self {
            site_bits,
            window: vec![true; sites],
            hidden,
            include_zero: false,
        }
    }

    /// Marginal on the first `k` key sites.
    #[must_use]
    pub fn restrict(&self, k: usize) -> Self {
        let k = k.min(self.window.len());
        let dropped = self.window[k..].iter().filter(|&&w| w).count();
        Self {
            site_bits: self.site_bits,
            window: self.window[..k].to_vec(),
            hidden: self.hidden + dropped,
            include_zero: self.include_zero,
        }
    }

    fn free_bits(&self) -> f64 {
        (self.site_bits * (self.window.iter().filter(|&&w| w).count() + self.hidden)) as f64
    }

    /// `ln |support|` of the underlying (unmarginalized) uniform law.
    fn ln_z(&self) -> f64 {
        let a = self.free_bits();
        if self.include_zero {
            a * LN_2
        } else {
            a * LN_2 + (-(-a).exp2()).ln_1p()
        }
    }

    /// Mass of the zero key.
    #[must_use]
    pub fn zero_mass(&self) -> f64 {
        let h = (self.site_bits * self.hidden) as f64;
        if self.include_zero {
            (h * LN_2 - self.ln_z()).exp()
        } else if self.hidden == 0 {
            0.0
        } else {
            (h * LN_2 + (-(-h).exp2()).ln_1p() - self.ln_z()).exp()
        }
    }

    fn check_support(&self, key: &BitVector) -> Result<()> {
        if key.len() != self.site_bits * self.window.len() {
            return Err(Error::CausalityViolation(format!(
                "key of {} bits for a {}-site reference",
                key.len(),
                self.window.len()
            )));
        }
        for (k, &inside) in self.window.iter().enumerate() {
            if !inside && !key.slice(self.site_bits * k, self.site_bits).is_zero() {
                return Err(Error::CausalityViolation(format!(
                    "outcome {} has support at key site {k} outside the window",
                    key.to_hex()
                )));
            }
        }
        if key.is_zero() && self.zero_mass() == 0.0 {
            return Err(Error::CausalityViolation("zero outcome for a nonzero reference".into()));
        }
        Ok(())
    }

    /// `Q(v)` for one key.
    pub fn point_mass(&self, key: &BitVector) -> Result<f64> {
        self.check_support(key)?;
        if key.is_zero() {
            return Ok(self.zero_mass());
        }
        let h = (self.site_bits * self.hidden) as f64;
        Ok((h * LN_2 - self.ln_z()).exp())
    }

    /// Total mass of one orbit class.
    pub fn class_mass(&self, partition: &OrbitPartition, class: &BitVector) -> Result<f64> {
        if partition.sites() != self.window.len() || partition.bits != self.site_bits {
            return Err(Error::InvalidArgument("partition does not match the reference".into()));
        }
        let mut ln = 0.0;
        let mut zero = true;
        for (k, c) in partition.sites.iter().enumerate() {
            let id = OrbitPartition::site_class(class, k);
            if id != 0 {
                zero = false;
                if !self.window[k] {
                    return Err(Error::CausalityViolation(format!(
                        "class with support at key site {k} outside the window"
                    )));
                }
            }
            match c.ln_size(id, self.site_bits) {
                Some(s) => ln += s,
                None => return Ok(0.0),
            }
        }
        if zero {
            if self.zero_mass() == 0.0 {
                return Err(Error::CausalityViolation("zero outcome for a nonzero reference".into()));
            }
            return Ok(self.zero_mass());
        }
        let h = (self.site_bits * self.hidden) as f64;
        Ok((ln + h * LN_2 - self.ln_z()).exp())
    }
}

/// An l1 distance together with a conservative standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct L1Estimate {
    pub l1: f64,
    pub sigma: f64,
}

fn assemble(total: u64, terms: impl Iterator<Item = Result<(u64, f64)>>) -> Result<L1Estimate> {
    let t = total.max(1) as f64;
    let mut l1 = 0.0;
    let mut covered = 0.0;
    let mut sigma = 0.0;
    for term in terms {
        let (count, mass) = term?;
        let p = count as f64 / t;
        l1 += (p - mass).abs();
        covered += mass;
        sigma += binomial_sigma(p, total);
    }
    l1 += (1.0 - covered).max(0.0);
    Ok(L1Estimate {
        l1: l1.min(2.0),
        sigma,
    })
}

/// `sum_v |P(v) - Q(v)|` over the whole support of `Q`; unobserved points contribute
/// `Q(v)` each through `1 - sum_observed Q(v)`.
pub fn l1_to_uniform(p: &EmpiricalDistribution<BitVector>, q: &UniformReference) -> Result<f64> {
    l1_histogram(p, q).map(|e| e.l1)
}

/// [`l1_to_uniform`] with its standard error.
pub fn l1_histogram(p: &EmpiricalDistribution<BitVector>, q: &UniformReference) -> Result<L1Estimate> {
    assemble(p.total(), p.iter().map(|(k, n)| Ok((n, q.point_mass(k)?))))
}

/// l1 distance computed from class frequencies; exact whenever the sampled law is constant
/// on every class of `partition`.
pub fn l1_orbit(
    classes: &EmpiricalDistribution<BitVector>,
    q: &UniformReference,
    partition: &OrbitPartition,
) -> Result<L1Estimate> {
    assemble(
        classes.total(),
        classes.iter().map(|(c, n)| Ok((n, q.class_mass(partition, c)?))),
    )
}
