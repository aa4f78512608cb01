use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{ChainGeometry, HalfTime, Parity, PhaseVector};
use crate::error::{mismatch, Error, Result};
use crate::gf2::BitMatrix;
use crate::symplectic::{sample_uniform, SymplecticMatrix};

/// The `L` gate symplectics of one circuit sample; gate `x` acts on sites `(x, x+1 mod L)`
/// with site `x` as its first half.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisorderRealization {
    geometry: ChainGeometry,
    gates: Vec<SymplecticMatrix>,
}

/// Draws `L` independent uniform gates of size `4N`.
pub fn build_disorder<R: Rng + ?Sized>(geometry: ChainGeometry, rng: &mut R) -> DisorderRealization {
    let gates = (0..geometry.l())
        .map(|_| sample_uniform(2 * geometry.n(), rng))
        .collect();
    DisorderRealization { geometry, gates }
}

/// Serialized realization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationFile {
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub seed: Option<u64>,
    pub gates: Vec<String>,
}

impl DisorderRealization {
    pub fn new(geometry: ChainGeometry, gates: Vec<SymplecticMatrix>) -> Result<Self> {
        if gates.len() != geometry.l() {
            return Err(mismatch("DisorderRealization gates", geometry.l(), gates.len()));
        }
        if let Some(g) = gates.iter().find(|g| g.n() != 2 * geometry.n()) {
            return Err(mismatch("DisorderRealization gate size", 4 * geometry.n(), g.dim()));
        }
        Ok(Self { geometry, gates })
    }

    #[must_use]
    pub fn identity(geometry: ChainGeometry) -> Self {
        Self {
            geometry,
            gates: vec![SymplecticMatrix::identity(2 * geometry.n()); geometry.l()],
        }
    }

    #[must_use]
    pub fn geometry(&self) -> ChainGeometry {
        self.geometry
    }

    #[must_use]
    pub fn gates(&self) -> &[SymplecticMatrix] {
        &self.gates
    }

    #[must_use]
    pub fn gate(&self, x: usize) -> &SymplecticMatrix {
        &self.gates[x]
    }

    pub fn set_gate(&mut self, x: usize, gate: SymplecticMatrix) -> Result<()> {
        if gate.n() != 2 * self.geometry.n() {
            return Err(mismatch("set_gate", 4 * self.geometry.n(), gate.dim()));
        }
        self.gates[x] = gate;
        Ok(())
    }

    fn gates_of(&self, parity: Parity) -> impl Iterator<Item = usize> {
        let start = match parity {
            Parity::Even => 0,
            Parity::Odd => 1,
        };
        (start..self.geometry.l()).step_by(2)
    }

    /// The `2NL x 2NL` matrix of one half-step. For gate `L-1` the first half is site
    /// `L-1` and the second half is site `0`, which produces the wraparound corner blocks.
    #[must_use]
    pub fn half_step_matrix(&self, parity: Parity) -> BitMatrix {
        let w = self.geometry.site_bits();
        let l = self.geometry.l();
        let mut m = BitMatrix::zeros(self.geometry.dim(), self.geometry.dim());
        for x in self.gates_of(parity) {
            let b = self.gates[x].blocks().expect("gates have an even split");
            let y = (x + 1) % l;
            m.place(w * x, w * x, &b.a);
            m.place(w * x, w * y, &b.b);
            m.place(w * y, w * x, &b.c);
            m.place(w * y, w * y, &b.d);
        }
        m
    }

    /// `S_chain = S_odd S_even`.
    #[must_use]
    pub fn chain_matrix(&self) -> BitMatrix {
        &self.half_step_matrix(Parity::Odd) * &self.half_step_matrix(Parity::Even)
    }

    /// Dense `S(t)`: `S_chain^t` for integer `t`, `S_even S_chain^{t-1/2}` otherwise.
    #[must_use]
    pub fn evolution_matrix(&self, t: HalfTime) -> BitMatrix {
        let full = self.chain_matrix().pow(u64::from(t.0 / 2));
        if t.is_integer() {
            full
        } else {
            &self.half_step_matrix(Parity::Even) * &full
        }
    }

    fn apply_gate(&self, x: usize, u: &mut PhaseVector, inverse: bool) {
        let w = self.geometry.site_bits();
        let l = self.geometry.l();
        let bits = u.bits_mut();
        let input = if x + 1 < l {
            bits.slice(w * x, 2 * w)
        } else {
            bits.slice(w * x, w).concat(&bits.slice(0, w))
        };
        if input.is_zero() {
            return;
        }
        let gate = &self.gates[x];
        let out = if inverse {
            gate.inverse().apply(&input)
        } else {
            gate.apply(&input)
        }
        .expect("gate size matches");
        if x + 1 < l {
            bits.write_slice(w * x, &out);
        } else {
            bits.write_slice(w * x, &out.slice(0, w));
            bits.write_slice(0, &out.slice(w, w));
        }
    }

    fn check(&self, u: &PhaseVector) -> Result<()> {
        if u.geometry() != self.geometry {
            return Err(Error::InvalidGeometry(format!(
                "vector for {:?} evolved with {:?}",
                u.geometry(),
                self.geometry
            )));
        }
        Ok(())
    }

    /// Applies one half-step in place.
    pub fn half_step(&self, parity: Parity, u: &mut PhaseVector) {
        for x in self.gates_of(parity) {
            self.apply_gate(x, u, false);
        }
    }

    /// Undoes one half-step in place.
    pub fn inverse_half_step(&self, parity: Parity, u: &mut PhaseVector) {
        for x in self.gates_of(parity) {
            self.apply_gate(x, u, true);
        }
    }

    /// `S(t) u0`, by `t2` alternating half-steps starting with the even one.
    pub fn evolve(&self, u0: &PhaseVector, t: HalfTime) -> Result<PhaseVector> {
        self.check(u0)?;
        let mut u = u0.clone();
        for step in 0..t.0 {
            self.half_step(Parity::of_step(step), &mut u);
        }
        Ok(u)
    }

    /// `u^{t2/2}` for `t2 = 0..=t2max`.
    pub fn trajectory(&self, u0: &PhaseVector, t2max: u32) -> Result<Vec<PhaseVector>> {
        self.check(u0)?;
        let mut out = Vec::with_capacity(t2max as usize + 1);
        let mut u = u0.clone();
        out.push(u.clone());
        for step in 0..t2max {
            self.half_step(Parity::of_step(step), &mut u);
            out.push(u.clone());
        }
        Ok(out)
    }

    #[must_use]
    pub fn to_file(&self, seed: Option<u64>) -> RealizationFile {
        RealizationFile {
            l: self.geometry.l(),
            n: self.geometry.n(),
            seed,
            gates: self.gates.iter().map(|g| g.matrix().to_text()).collect(),
        }
    }

    pub fn from_file(file: &RealizationFile) -> Result<Self> {
        let geometry = ChainGeometry::new(file.l, file.n)?;
        let gates = file
            .gates
            .iter()
            .map(|t| SymplecticMatrix::new(BitMatrix::from_text(t)?))
            .collect::<Result<Vec<_>>>()?;
        Self::new(geometry, gates)
    }

    pub fn to_json(&self, seed: Option<u64>) -> String {
        serde_json::to_string_pretty(&self.to_file(seed)).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: RealizationFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(&file)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::SymplecticForm;
    use crate::montecarlo::rng_from_seed;

    #[test]
    fn identity_gates_fix_everything() {
        let g = ChainGeometry::new(6, 2).unwrap();
        let r = DisorderRealization::identity(g);
        assert_eq!(r.half_step_matrix(Parity::Even), BitMatrix::identity(g.dim()));
        assert_eq!(r.half_step_matrix(Parity::Odd), BitMatrix::identity(g.dim()));
        let u = PhaseVector::full_x(g);
        assert_eq!(r.evolve(&u, HalfTime(7)).unwrap(), u);
    }

    #[test]
    fn vector_path_matches_dense_path() {
        let mut rng = rng_from_seed(5);
        for (l, n) in [(2, 1), (4, 1), (6, 2), (8, 1)] {
            let g = ChainGeometry::new(l, n).unwrap();
            let r = build_disorder(g, &mut rng);
            let form = SymplecticForm::new(g.dim() / 2);
            for parity in [Parity::Even, Parity::Odd] {
                assert!(form.is_symplectic(&r.half_step_matrix(parity)).unwrap());
            }
            for t2 in 0..7 {
                let u = PhaseVector::from_bits(g, crate::gf2::BitVector::random(g.dim(), &mut rng)).unwrap();
                let dense = r.evolution_matrix(HalfTime(t2)).mul_vec(u.bits()).unwrap();
                assert_eq!(r.evolve(&u, HalfTime(t2)).unwrap().into_bits(), dense);
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let g = ChainGeometry::new(4, 1).unwrap();
        let r = build_disorder(g, &mut rng_from_seed(11));
        let back = DisorderRealization::from_json(&r.to_json(Some(11))).unwrap();
        assert_eq!(back, r);
        assert!(r.to_json(Some(11)).contains("\"L\": 4"));
    }

    #[test]
    fn geometry_mismatch_is_rejected() {
        let r = DisorderRealization::identity(ChainGeometry::new(4, 1).unwrap());
        let u = PhaseVector::zero(ChainGeometry::new(4, 2).unwrap());
        assert!(r.evolve(&u, HalfTime(1)).is_err());
    }
}
