use std::fmt;

use super::ChainGeometry;
use crate::error::{mismatch, Error, Result};
use crate::gf2::BitVector;

/// Vector in `Z_2^{2NL}`; site `x` occupies bits `[2Nx, 2N(x+1))`, qubit `i` of a site
/// is the pair `(q, p)` at offsets `2i, 2i+1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PhaseVector {
    geometry: ChainGeometry,
    bits: BitVector,
}

impl PhaseVector {
    #[must_use]
    pub fn zero(geometry: ChainGeometry) -> Self {
        Self {
            geometry,
            bits: BitVector::zeros(geometry.dim()),
        }
    }

    pub fn from_bits(geometry: ChainGeometry, bits: BitVector) -> Result<Self> {
        if bits.len() != geometry.dim() {
            return Err(mismatch("PhaseVector", geometry.dim(), bits.len()));
        }
        Ok(Self { geometry, bits })
    }

    /// `X` on the first qubit of site `x`, identity elsewhere.
    #[must_use]
    pub fn local_x(geometry: ChainGeometry, x: usize) -> Self {
        let mut v = Self::zero(geometry);
        v.bits.set(geometry.site_bits() * (x % geometry.l()), true);
        v
    }

    /// `X` on every qubit.
    #[must_use]
    pub fn full_x(geometry: ChainGeometry) -> Self {
        let bits = BitVector::from_bits((0..geometry.dim()).map(|i| i % 2 == 0));
        Self { geometry, bits }
    }

    /// Vector equal to `site` at `x` and zero elsewhere.
    pub fn local(geometry: ChainGeometry, x: usize, site: &BitVector) -> Result<Self> {
        let mut v = Self::zero(geometry);
        v.set_site(x, site)?;
        Ok(v)
    }

    #[must_use]
    pub fn geometry(&self) -> ChainGeometry {
        self.geometry
    }

    #[must_use]
    pub fn bits(&self) -> &BitVector {
        &self.bits
    }

    #[must_use]
    pub fn into_bits(self) -> BitVector {
        self.bits
    }

    pub(crate) fn bits_mut(&mut self) -> &mut BitVector {
        &mut self.bits
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    /// Projection `u_x` onto site `x`.
    #[must_use]
    pub fn site(&self, x: usize) -> BitVector {
        let w = self.geometry.site_bits();
        self.bits.slice(w * x, w)
    }

    pub fn set_site(&mut self, x: usize, value: &BitVector) -> Result<()> {
        let w = self.geometry.site_bits();
        if x >= self.geometry.l() {
            return Err(Error::InvalidArgument(format!("site {x} outside ring of {}", self.geometry.l())));
        }
        if value.len() != w {
            return Err(mismatch("set_site", w, value.len()));
        }
        self.bits.write_slice(w * x, value);
        Ok(())
    }

    #[must_use]
    pub fn site_is_zero(&self, x: usize) -> bool {
        self.site(x).is_zero()
    }

    /// Sites with a nonzero projection, in increasing order.
    #[must_use]
    pub fn support(&self) -> Vec<usize> {
        (0..self.geometry.l()).filter(|&x| !self.site_is_zero(x)).collect()
    }

    /// Concatenated projections onto `sites`, in the given order.
    #[must_use]
    pub fn project(&self, sites: &[usize]) -> BitVector {
        let w = self.geometry.site_bits();
        let mut out = BitVector::zeros(w * sites.len());
        for (k, &x) in sites.iter().enumerate() {
            out.write_slice(w * k, &self.site(x));
        }
        out
    }

    /// Pauli string, one letter per qubit and `|` between sites.
    #[must_use]
    pub fn to_pauli(&self) -> String {
        let mut s = String::with_capacity(self.geometry.dim() / 2 + self.geometry.l());
        for x in 0..self.geometry.l() {
            if x > 0 {
                s.push('|');
            }
            for i in 0..self.geometry.n() {
                let b = self.geometry.site_bits() * x + 2 * i;
                s.push(match (self.bits.get(b), self.bits.get(b + 1)) {
                    (false, false) => 'I',
                    (true, false) => 'X',
                    (false, true) => 'Z',
                    (true, true) => 'Y',
                });
            }
        }
        s
    }

    /// Reads a Pauli string over `{I, X, Y, Z}`. Whitespace is ignored; `|` separators,
    /// when present, must split the string into `L` groups of `N` letters.
    pub fn from_pauli(geometry: ChainGeometry, s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let groups: Vec<&str> = compact.split('|').collect();
        if groups.len() > 1
            && (groups.len() != geometry.l() || groups.iter().any(|g| g.chars().count() != geometry.n())) {
                return Err(Error::Parse(format!(
                    "expected {} sites of {} qubits in {s:?}",
                    geometry.l(),
                    geometry.n()
                )));
            }
        let letters: Vec<char> = compact.chars().filter(|&c| c != '|').collect();
        if letters.len() != geometry.dim() / 2 {
            return Err(Error::Parse(format!(
                "expected {} qubit letters, found {} in {s:?}",
                geometry.dim() / 2,
                letters.len()
            )));
        }
        let mut v = Self::zero(geometry);
        for (i, c) in letters.into_iter().enumerate() {
            let (q, p) = match c.to_ascii_uppercase() {
                'I' => (false, false),
                'X' => (true, false),
                'Z' => (false, true),
                'Y' => (true, true),
                other => return Err(Error::Parse(format!("unknown Pauli letter {other:?}"))),
            };
            v.bits.set(2 * i, q);
            v.bits.set(2 * i + 1, p);
        }
        Ok(v)
    }
}

impl fmt::Display for PhaseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pauli())
    }
}

impl fmt::Debug for PhaseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PhaseVector({})", self.to_pauli())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codec_examples() {
        let g = ChainGeometry::new(2, 2).unwrap();
        assert_eq!(PhaseVector::zero(g).to_pauli(), "II|II");
        let v = PhaseVector::local_x(g, 0);
        assert_eq!(v.to_pauli(), "XI|II");
        assert_eq!(PhaseVector::from_pauli(g, "X I I I").unwrap(), v);
        assert_eq!(PhaseVector::from_pauli(g, "zy|iX").unwrap().to_pauli(), "ZY|IX");
        assert!(PhaseVector::from_pauli(g, "XII").is_err());
        assert!(PhaseVector::from_pauli(g, "XIQI").is_err());
        assert!(PhaseVector::from_pauli(g, "XII|I").is_err());
    }

    #[test]
    fn support_and_projection() {
        let g = ChainGeometry::new(4, 1).unwrap();
        let v = PhaseVector::from_pauli(g, "X|I|Y|I").unwrap();
        assert_eq!(v.support(), vec![0, 2]);
        assert_eq!(v.project(&[2, 0]).to_string(), "1110");
        assert_eq!(PhaseVector::full_x(g).support(), vec![0, 1, 2, 3]);
    }
}
