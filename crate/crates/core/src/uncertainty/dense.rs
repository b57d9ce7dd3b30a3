//! Dense state vectors for small systems.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::algebra::PauliOp;
use crate::error::{contract, Error, Result};

/// Largest qubit count handled densely.
pub const DENSE_MAX_QUBITS: usize = 20;

const NORM_TOLERANCE: f64 = 1e-10;

/// A normalized pure state; qubit `i` is bit `i` of the amplitude index.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    n: usize,
    amps: Vec<Complex64>,
}

pub(crate) fn check_budget(n: usize) -> Result<()> {
    if n > DENSE_MAX_QUBITS {
        return Err(Error::Budget(format!("dense simulation limited to {DENSE_MAX_QUBITS} qubits, got {n}")));
    }
    Ok(())
}

fn masks(p: &PauliOp) -> (usize, usize) {
    let to_mask = |bits: &crate::algebra::BitVec| bits.iter_ones().fold(0usize, |m, q| m | 1 << q);
    (to_mask(p.x_bits()), to_mask(p.z_bits()))
}

/// `P v` for an unnormalized vector.
pub(crate) fn apply_pauli(p: &PauliOp, v: &[Complex64]) -> Vec<Complex64> {
    let (x, z) = masks(p);
    // Y = iXZ on each qubit, so P = sign · i^{|x∧z|} · X^x Z^z
    let base = match (x & z).count_ones() % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    } * if p.is_negative() { -1.0 } else { 1.0 };
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    for (b, &a) in v.iter().enumerate() {
        let phase = if (b & z).count_ones() % 2 == 1 { -base } else { base };
        out[b ^ x] = phase * a;
    }
    out
}

/// `(I + s·P)/2 · v`.
pub(crate) fn apply_projector(p: &PauliOp, s: f64, v: &[Complex64]) -> Vec<Complex64> {
    let pv = apply_pauli(p, v);
    v.iter().zip(pv).map(|(a, b)| (a + b * s) * 0.5).collect()
}

pub(crate) fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub(crate) fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(Complex64::norm_sqr).sum()
}

impl DenseState {
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_budget(n)?;
        if index >> n != 0 {
            return contract(format!("basis index {index} out of range for {n} qubits"));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::basis(n, 0)
    }

    /// Requires length `2^n` and unit norm.
    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_budget(n)?;
        if amps.len() != 1 << n {
            return contract(format!("expected {} amplitudes, got {}", 1usize << n, amps.len()));
        }
        let norm = norm_sqr(&amps).sqrt();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return contract(format!("state has norm {norm}"));
        }
        Ok(Self { n, amps })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(n: usize, mut amps: Vec<Complex64>) -> Result<Self> {
        let norm = norm_sqr(&amps).sqrt();
        if norm < 1e-12 {
            return contract("cannot normalize the zero vector");
        }
        for a in &mut amps {
            *a /= norm;
        }
        Self::from_amplitudes(n, amps)
    }

    /// Tensor product of single-qubit states `α_q|0⟩ + β_q|1⟩`.
    pub fn product(factors: &[(Complex64, Complex64)]) -> Result<Self> {
        let n = factors.len();
        check_budget(n)?;
        let amps = (0..1usize << n)
            .map(|b| factors.iter().enumerate().map(|(q, &(a0, a1))| if b >> q & 1 == 1 { a1 } else { a0 }).product())
            .collect();
        Self::normalized(n, amps)
    }

    /// Haar-random unit vector in the span of orthonormal `basis`.
    pub fn random_in_span<R: Rng>(basis: &[DenseState], rng: &mut R) -> Result<Self> {
        let first = basis.first().ok_or_else(|| Error::Contract("empty basis".into()))?;
        let mut amps = vec![Complex64::new(0.0, 0.0); first.amps.len()];
        for state in basis {
            let c = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
            for (a, b) in amps.iter_mut().zip(&state.amps) {
                *a += c * b;
            }
        }
        Self::normalized(first.n, amps)
    }

    /// `Σ c_i |basis_i⟩`, normalized.
    pub fn combination(basis: &[DenseState], coefficients: &[Complex64]) -> Result<Self> {
        let first = basis.first().ok_or_else(|| Error::Contract("empty basis".into()))?;
        let mut amps = vec![Complex64::new(0.0, 0.0); first.amps.len()];
        for (state, &c) in basis.iter().zip(coefficients) {
            for (a, b) in amps.iter_mut().zip(&state.amps) {
                *a += c * b;
            }
        }
        Self::normalized(first.n, amps)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &DenseState) -> Complex64 {
        inner(&self.amps, &other.amps)
    }

    pub fn apply(&self, p: &PauliOp) -> Result<DenseState> {
        self.check(p)?;
        Ok(DenseState { n: self.n, amps: apply_pauli(p, &self.amps) })
    }

    /// `⟨ψ|P|ψ⟩` (real for Hermitian `P`).
    pub fn expectation(&self, p: &PauliOp) -> Result<f64> {
        self.check(p)?;
        Ok(inner(&self.amps, &apply_pauli(p, &self.amps)).re)
    }

    fn check(&self, p: &PauliOp) -> Result<()> {
        if p.num_qubits() != self.n {
            return contract(format!("operator on {} qubits, state on {}", p.num_qubits(), self.n));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOp {
        s.parse().unwrap()
    }

    #[test]
    fn pauli_action_on_basis_states() {
        let zero = DenseState::zero(2).unwrap();
        // qubit 0 is the lowest bit
        let x0 = zero.apply(&p("XI")).unwrap();
        assert_eq!(x0, DenseState::basis(2, 1).unwrap());
        let y1 = zero.apply(&p("IY")).unwrap();
        assert_eq!(y1.amplitudes()[2], Complex64::new(0.0, 1.0));
        assert_eq!(DenseState::basis(2, 1).unwrap().expectation(&p("-ZI")).unwrap(), 1.0);
    }

    #[test]
    fn product_state_expectations() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = (Complex64::new(h, 0.0), Complex64::new(h, 0.0));
        let zero = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        let s = DenseState::product(&[plus, zero]).unwrap();
        assert!((s.expectation(&p("XI")).unwrap() - 1.0).abs() < 1e-12);
        assert!(s.expectation(&p("ZI")).unwrap().abs() < 1e-12);
        assert!((s.expectation(&p("IZ")).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn budget_enforced() {
        assert!(matches!(DenseState::zero(21), Err(Error::Budget(_))));
    }

    #[test]
    fn unnormalized_amplitudes_rejected() {
        assert!(DenseState::from_amplitudes(1, vec![Complex64::new(1.0, 0.0); 2]).is_err());
    }
}
