use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

/// Exact non-negative integer count.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactCount(pub BigUint);

impl ExactCount {
    #[must_use]
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }

    #[must_use]
    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl fmt::Display for ExactCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

/// `|Sp(2n, Z_2)| = prod_{i=1..n} (2^{2i} - 1) 2^{2i-1}`.
#[must_use]
pub fn group_order(n: usize) -> ExactCount {
    let mut acc = BigUint::one();
    for i in 1..=n {
        acc *= (pow2(2 * i) - 1u32) * pow2(2 * i - 1);
    }
    ExactCount(acc)
}

/// The normalized window `(a(n), b(n))` with
/// `a(n) 2^{2n^2+n} <= |Sp(2n)| <= b(n) 2^{2n^2+n}`.
#[must_use]
pub fn group_order_window(n: usize) -> (f64, f64) {
    let s: f64 = (1..=n).map(|i| 1.0 / (4f64.powi(i as i32) - 1.0)).sum();
    let a = (-s).exp();
    let b = (-(1.0 - 4f64.powi(-(n as i32))) / 3.0).exp();
    (a, b)
}

/// Number of `k`-dimensional subspaces of `Z_2^n`.
pub fn count_subspaces(n: usize, k: usize) -> Result<ExactCount> {
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "subspace dimension {k} exceeds ambient dimension {n}"
        )));
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= pow2(n) - pow2(i);
        den *= pow2(k) - pow2(i);
    }
    Ok(ExactCount(num / den))
}
