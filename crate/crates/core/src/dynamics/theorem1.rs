//! Distinguishing two encoded states through a region far from the inputs.

use serde::Serialize;

use crate::algebra::symplectic_matrix;
use crate::algebra::{Pauli, PauliOp, RowSpace};
use crate::code::StabilizerCode;
use crate::correctability::{construct_theorem1_regions, Theorem1Regions};
use crate::error::{contract, Error, Result};
use crate::lattice::Region;

use super::circuit::LocalCircuit;
use super::tableau::StabilizerState;

/// Regions, decoded logical and the two input states shared by every
/// circuit evaluated against one reference encoder.
#[derive(Clone, Debug)]
pub struct Theorem1Setup {
    pub a: Region,
    pub regions: Theorem1Regions,
    /// `U† P̄_B U` for the reference encoder `U`.
    pub decoded: PauliOp,
    /// Inputs with `±decoded` stabilized and `|0⟩` on every site outside `A`.
    pub states: [StabilizerState; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem1Report {
    pub depth: usize,
    pub cube_size: i64,
    pub d_ba: i64,
    pub cone_hits_a: bool,
    pub d_full: i8,
    pub d_loc: i8,
    /// Light-cone growth per layer (the circuit range).
    pub cone_speed: i64,
    /// Localization error outside the cone; exactly zero for circuits.
    pub tail: f64,
}

impl Theorem1Report {
    /// A cone missing `A` forces `D_full = 0`, and `D_full = 2` forces a cone reaching `A`.
    pub fn dichotomy_holds(&self) -> bool {
        (self.cone_hits_a || self.d_full == 0) && (self.d_full != 2 || self.cone_hits_a)
    }
}

impl Theorem1Setup {
    pub fn new(code: &StabilizerCode, reference: &LocalCircuit, a: &Region) -> Result<Self> {
        if reference.num_qubits() != code.n() {
            return contract(format!("encoder on {} qubits, code on {}", reference.num_qubits(), code.n()));
        }
        let regions = construct_theorem1_regions(code, a)?;
        let decoded = reference.heisenberg_evolve(&regions.p_bar_b)?;
        let n = code.n();
        let outside_ok = (0..n).filter(|&q| !a.contains(q)).all(|q| !decoded.x_bits().get(q));
        let inside = decoded.restricted_to(&a.to_vec());
        if !outside_ok || inside.is_identity() {
            return Err(Error::Setup(format!("the reference circuit does not decode P̄_B onto A: got {decoded}")));
        }
        let mut base: Vec<PauliOp> = (0..n).filter(|&q| !a.contains(q)).map(|q| PauliOp::z_on(n, [q])).collect();
        base.extend(complete_on(&inside, &a.to_vec(), n)?);
        let states = [false, true].map(|negative| {
            let mut gens = base.clone();
            gens.push(decoded.clone().with_sign(decoded.is_negative() ^ negative));
            StabilizerState::from_generators(gens)
        });
        let [s0, s1] = states;
        Ok(Self { a: a.clone(), regions, decoded, states: [s0?, s1?] })
    }

    pub fn evaluate(&self, code: &StabilizerCode, circuit: &LocalCircuit) -> Result<Theorem1Report> {
        let lattice = code.lattice();
        let b = &self.regions.b;
        let cone_hits_a = circuit.heisenberg_support(b).intersects(&self.a);
        let distinguish = |c: &LocalCircuit| -> Result<i8> {
            let evolved = c.heisenberg_evolve(&self.regions.p_bar_b)?;
            Ok(self.states[0].expectation(&evolved)? - self.states[1].expectation(&evolved)?)
        };
        let d_full = distinguish(circuit)?;
        let d_loc = distinguish(&circuit.localize(lattice, b, self.regions.d_ba - 1))?;
        Ok(Theorem1Report {
            depth: circuit.depth(),
            cube_size: self.regions.cube_size,
            d_ba: self.regions.d_ba,
            cone_hits_a,
            d_full,
            d_loc,
            cone_speed: circuit.range(),
            tail: 0.0,
        })
    }
}

/// Runs the experiment with `encoder` serving as its own reference.
pub fn theorem1_experiment(code: &StabilizerCode, encoder: &LocalCircuit, a: &Region) -> Result<Theorem1Report> {
    Theorem1Setup::new(code, encoder, a)?.evaluate(code, encoder)
}

/// `|A| − 1` Paulis on `sites` that commute with `first` and each other and
/// are independent of it, chosen greedily in enumeration order.
fn complete_on(first: &PauliOp, sites: &[usize], n: usize) -> Result<Vec<PauliOp>> {
    if sites.len() > 8 {
        return contract(format!("input region of {} sites is too large", sites.len()));
    }
    let mut chosen = vec![first.clone()];
    let mut span = RowSpace::new(&symplectic_matrix(&chosen, n));
    let letters = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    for idx in 1..4usize.pow(sites.len() as u32) {
        if chosen.len() == sites.len() {
            break;
        }
        let mut op = PauliOp::identity(n);
        let mut rest = idx;
        for &q in sites {
            op.set(q, letters[rest % 4]);
            rest /= 4;
        }
        if chosen.iter().all(|c| !c.anticommutes_unchecked(&op)) && span.insert(&op.symplectic()) {
            chosen.push(op);
        }
    }
    chosen.remove(0);
    Ok(chosen)
}
