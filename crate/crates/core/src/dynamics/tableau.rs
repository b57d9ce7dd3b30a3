//! Stabilizer states as tableaux with destabilizers.

use crate::algebra::{symplectic_matrix, BitMatrix, BitVec, PauliOp};
use crate::error::{contract, Error, Result};

use super::circuit::{GateOp, LocalCircuit};

/// A pure stabilizer state on `n` qubits.
///
/// `destabilizers[i]` anticommutes with `stabilizers[i]` and commutes with
/// every other stabilizer and destabilizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerState {
    stabilizers: Vec<PauliOp>,
    destabilizers: Vec<PauliOp>,
}

impl StabilizerState {
    /// `|0…0⟩`.
    pub fn zero(n: usize) -> Self {
        Self {
            stabilizers: (0..n).map(|q| PauliOp::z_on(n, [q])).collect(),
            destabilizers: (0..n).map(|q| PauliOp::x_on(n, [q])).collect(),
        }
    }

    /// The state fixed by `n` independent commuting generators.
    pub fn from_generators(generators: Vec<PauliOp>) -> Result<Self> {
        let m = generators.len();
        let n = generators.first().map_or(0, PauliOp::num_qubits);
        if m != n || generators.iter().any(|g| g.num_qubits() != n) {
            return contract(format!("need exactly n generators on n qubits, got {m} on {n}"));
        }
        for (i, a) in generators.iter().enumerate() {
            for (j, b) in generators.iter().enumerate().skip(i + 1) {
                if a.anticommutes_unchecked(b) {
                    return Err(Error::Validation(format!("state generators {i} and {j} anticommute")));
                }
            }
        }
        // rows (z ‖ x) so that M · d gives the commutation pattern of d
        let swapped: Vec<BitVec> = generators.iter().map(|g| g.z_bits().concat(g.x_bits())).collect();
        let m_mat = BitMatrix::from_rows(swapped, 2 * n)?;
        if symplectic_matrix(&generators, n).rank() != n {
            return Err(Error::Validation("state generators are dependent".into()));
        }
        let mut destabilizers: Vec<PauliOp> = Vec::with_capacity(n);
        for i in 0..n {
            let target = BitVec::from_indices(n, [i]);
            let d = m_mat.solve(&target)?.expect("independent generators admit dual vectors");
            destabilizers.push(PauliOp::from_symplectic(&d)?);
        }
        for i in 0..n {
            for j in 0..i {
                if destabilizers[i].anticommutes_unchecked(&destabilizers[j]) {
                    destabilizers[i] = destabilizers[i].multiply_unchecked(&generators[j]);
                }
            }
        }
        for d in &mut destabilizers {
            *d = d.clone().with_sign(false);
        }
        Ok(Self { stabilizers: generators, destabilizers })
    }

    pub fn num_qubits(&self) -> usize {
        self.stabilizers.len()
    }

    pub fn stabilizers(&self) -> &[PauliOp] {
        &self.stabilizers
    }

    pub fn destabilizers(&self) -> &[PauliOp] {
        &self.destabilizers
    }

    pub fn apply_gate(&mut self, gate: &GateOp) -> Result<()> {
        for p in self.stabilizers.iter_mut().chain(self.destabilizers.iter_mut()) {
            gate.conjugate(p)?;
        }
        Ok(())
    }

    pub fn apply_circuit(&mut self, circuit: &LocalCircuit) -> Result<()> {
        if circuit.num_qubits() != self.num_qubits() {
            return contract(format!(
                "circuit on {} qubits applied to a state on {}",
                circuit.num_qubits(),
                self.num_qubits()
            ));
        }
        for layer in circuit.layers() {
            for g in layer {
                self.apply_gate(g)?;
            }
        }
        Ok(())
    }

    /// `⟨ψ|P|ψ⟩ ∈ {−1, 0, +1}`.
    pub fn expectation(&self, p: &PauliOp) -> Result<i8> {
        if p.num_qubits() != self.num_qubits() {
            return contract(format!("operator on {} qubits, state on {}", p.num_qubits(), self.num_qubits()));
        }
        if self.stabilizers.iter().any(|s| s.anticommutes_unchecked(p)) {
            return Ok(0);
        }
        let mut acc = PauliOp::identity(self.num_qubits());
        for (s, d) in self.stabilizers.iter().zip(&self.destabilizers) {
            if d.anticommutes_unchecked(p) {
                acc = acc.multiply_unchecked(s);
            }
        }
        debug_assert_eq!(acc.symplectic(), p.symplectic());
        Ok(if acc.is_negative() == p.is_negative() { 1 } else { -1 })
    }
}
