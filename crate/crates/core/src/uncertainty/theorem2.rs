//! Correlations between two strip realizations of one logical observable
//! in a state prepared by a local Clifford circuit.

use serde::Serialize;

use super::distribution::OutcomeDistribution;
use crate::algebra::PauliOp;
use crate::code::{StabilizerCode, Toric2dLayout};
use crate::dynamics::{CircuitBuilder, Gate, LocalCircuit, StabilizerState, ToricEncoder};
use crate::error::{contract, Error, Result};
use crate::lattice::Region;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem2Report {
    pub depth: usize,
    /// Distance between the two strip supports.
    pub separation: i64,
    pub cones_disjoint: bool,
    /// `⟨Z̄⁽¹⁾Z̄⁽²⁾⟩`.
    pub corr: f64,
    pub h1: f64,
    pub h2: f64,
    pub h_joint: f64,
    pub mutual_info: f64,
    pub is_product: bool,
    #[serde(skip)]
    pub joint: OutcomeDistribution,
}

/// Measures two realizations `z1`, `z2` of the same logical operator on
/// `prep|0…0⟩`. Joint probabilities are exact:
/// `p(s₁,s₂) = (1 + s₁⟨Z₁⟩ + s₂⟨Z₂⟩ + s₁s₂⟨Z₁Z₂⟩)/4`.
pub fn theorem2_experiment(
    code: &StabilizerCode,
    prep: &LocalCircuit,
    z1: &PauliOp,
    z2: &PauliOp,
    separation: i64,
) -> Result<Theorem2Report> {
    let n = code.n();
    if prep.num_qubits() != n || z1.num_qubits() != n || z2.num_qubits() != n {
        return contract("circuit, strips and code must act on the same qubits");
    }
    if !code.is_logical(z1) || !code.in_stabilizer_group(&z1.multiply(z2)?) {
        return contract("strips must realize the same logical operator");
    }
    let (s1, s2) = (Region::new(z1.support()), Region::new(z2.support()));
    let actual = code.lattice().region_distance(&s1, &s2)?;
    if actual < separation {
        return Err(Error::Setup(format!("strips are {actual} apart, need at least {separation}")));
    }
    let cones_disjoint = !prep.heisenberg_support(&s1).intersects(&prep.heisenberg_support(&s2));

    let mut state = StabilizerState::zero(n);
    state.apply_circuit(prep)?;
    let e1 = state.expectation(z1)? as f64;
    let e2 = state.expectation(z2)? as f64;
    let e12 = state.expectation(&z1.multiply(z2)?)? as f64;
    let mut labels = Vec::with_capacity(4);
    let mut probs = Vec::with_capacity(4);
    for (l1, a) in [('+', 1.0), ('-', -1.0)] {
        for (l2, b) in [('+', 1.0), ('-', -1.0)] {
            labels.push(format!("{l1}{l2}"));
            probs.push((1.0 + a * e1 + b * e2 + a * b * e12) / 4.0);
        }
    }
    let joint = OutcomeDistribution::new(labels, probs)?;
    let (m1, m2) = (joint.marginal(0)?, joint.marginal(1)?);
    let is_product = joint.labels().iter().zip(joint.probs()).all(|(label, &p)| {
        let mut c = label.chars();
        let (a, b) = (c.next().unwrap_or('+'), c.next().unwrap_or('+'));
        let q = m1.prob(&a.to_string()).unwrap_or(0.0) * m2.prob(&b.to_string()).unwrap_or(0.0);
        p == q
    });
    let (h1, h2, h_joint) = (m1.entropy(), m2.entropy(), joint.entropy());
    let mutual_info = h1 + h2 - h_joint;
    if cones_disjoint && (!is_product || mutual_info != 0.0) {
        return contract("disjoint light cones produced correlated strips");
    }
    Ok(Theorem2Report {
        depth: prep.depth(),
        separation: actual,
        cones_disjoint,
        corr: e12,
        h1,
        h2,
        h_joint,
        mutual_info,
        is_product,
        joint,
    })
}

/// `Z̄₁` strips at columns `column` and `column + offset` of the toric code.
pub fn toric_strips(l: usize, column: i64, offset: i64) -> (PauliOp, PauliOp) {
    let t = Toric2dLayout::new(l);
    (t.vertical_z_loop(column), t.vertical_z_loop(column + offset))
}

/// `H` on the first input followed by the encoder, preparing the `X̄₁ = +1`
/// code state.
pub fn x_eigenstate_prep(code: &StabilizerCode, encoder: &ToricEncoder) -> Result<LocalCircuit> {
    let mut b = CircuitBuilder::new(code.n());
    b.push(Gate::H, &[encoder.a1]);
    b.build(code.lattice())?.then(&encoder.circuit)
}
