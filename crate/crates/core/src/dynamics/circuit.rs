//! Layered local circuits, light cones and Heisenberg evolution.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::PauliOp;
use crate::error::{contract, Error, Result};
use crate::lattice::{Lattice, Region};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Gate {
    H,
    S,
    Sdg,
    X,
    Y,
    Z,
    Cnot,
    Cz,
    /// Non-Clifford; allowed in circuits but rejected by Pauli propagation.
    T,
}

impl Gate {
    pub fn arity(self) -> usize {
        match self {
            Gate::Cnot | Gate::Cz => 2,
            _ => 1,
        }
    }

    pub fn is_clifford(self) -> bool {
        self != Gate::T
    }

    pub fn inverse(self) -> Option<Gate> {
        match self {
            Gate::S => Some(Gate::Sdg),
            Gate::Sdg => Some(Gate::S),
            Gate::T => None,
            g => Some(g),
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Gate::H => "H",
            Gate::S => "S",
            Gate::Sdg => "SDG",
            Gate::X => "X",
            Gate::Y => "Y",
            Gate::Z => "Z",
            Gate::Cnot => "CNOT",
            Gate::Cz => "CZ",
            Gate::T => "T",
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Gate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "H" => Gate::H,
            "S" => Gate::S,
            "SDG" | "SDAG" => Gate::Sdg,
            "X" => Gate::X,
            "Y" => Gate::Y,
            "Z" => Gate::Z,
            "CNOT" | "CX" => Gate::Cnot,
            "CZ" => Gate::Cz,
            "T" => Gate::T,
            _ => return Err(Error::Parse(format!("unknown gate tag {s:?}"))),
        })
    }
}

impl TryFrom<String> for Gate {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Gate> for String {
    fn from(g: Gate) -> String {
        g.tag().to_string()
    }
}

/// A gate on explicit sites; for `CNOT` the first site is the control.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateOp {
    pub gate: Gate,
    pub sites: Vec<usize>,
}

impl GateOp {
    pub fn new(gate: Gate, sites: Vec<usize>) -> Self {
        Self { gate, sites }
    }

    /// `P ← G P G†`.
    pub(crate) fn conjugate(&self, p: &mut PauliOp) -> Result<()> {
        let bits = |p: &PauliOp, q: usize| (p.x_bits().get(q), p.z_bits().get(q));
        match self.gate {
            Gate::H => {
                let q = self.sites[0];
                let (x, z) = bits(p, q);
                if x && z {
                    p.flip_sign();
                }
                p.set_bits(q, z, x);
            }
            Gate::S | Gate::Sdg => {
                let q = self.sites[0];
                let (x, z) = bits(p, q);
                let flip = if self.gate == Gate::S { x && z } else { x && !z };
                if flip {
                    p.flip_sign();
                }
                p.set_bits(q, x, z ^ x);
            }
            Gate::X | Gate::Y | Gate::Z => {
                let (x, z) = bits(p, self.sites[0]);
                let flip = match self.gate {
                    Gate::X => z,
                    Gate::Z => x,
                    _ => x ^ z,
                };
                if flip {
                    p.flip_sign();
                }
            }
            Gate::Cnot => {
                let (c, t) = (self.sites[0], self.sites[1]);
                let (xc, zc) = bits(p, c);
                let (xt, zt) = bits(p, t);
                if xc && zt && !(xt ^ zc) {
                    p.flip_sign();
                }
                p.set_bits(c, xc, zc ^ zt);
                p.set_bits(t, xt ^ xc, zt);
            }
            Gate::Cz => {
                let (a, b) = (self.sites[0], self.sites[1]);
                let (xa, za) = bits(p, a);
                let (xb, zb) = bits(p, b);
                if xa && xb && (za ^ zb) {
                    p.flip_sign();
                }
                p.set_bits(a, xa, za ^ xb);
                p.set_bits(b, xb, zb ^ xa);
            }
            Gate::T => return Err(Error::UnsupportedGate(format!("{} is not a Clifford gate", self.gate))),
        }
        Ok(())
    }
}

/// Gate layers with pairwise disjoint supports inside each layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCircuit {
    n: usize,
    layers: Vec<Vec<GateOp>>,
    range: i64,
}

impl LocalCircuit {
    pub fn empty(n: usize) -> Self {
        Self { n, layers: Vec::new(), range: 0 }
    }

    /// Validates arity, site bounds and in-layer disjointness; `range` is the
    /// largest gate-support diameter on `lattice`.
    pub fn new(layers: Vec<Vec<GateOp>>, lattice: &Lattice) -> Result<Self> {
        let n = lattice.num_sites();
        let mut range = 0;
        for (li, layer) in layers.iter().enumerate() {
            let mut used = vec![false; n];
            for g in layer {
                if g.sites.len() != g.gate.arity() {
                    return Err(Error::Validation(format!(
                        "layer {li}: {} expects {} sites, got {:?}",
                        g.gate,
                        g.gate.arity(),
                        g.sites
                    )));
                }
                for &q in &g.sites {
                    if q >= n {
                        return Err(Error::Validation(format!("layer {li}: site {q} outside {n} qubits")));
                    }
                    if used[q] {
                        return Err(Error::Validation(format!("layer {li}: site {q} used twice")));
                    }
                    used[q] = true;
                }
                range = range.max(lattice.region_diameter(&Region::new(g.sites.iter().copied())));
            }
        }
        Ok(Self { n, layers, range })
    }

    pub fn from_json(text: &str, lattice: &Lattice) -> Result<Self> {
        Self::new(serde_json::from_str(text)?, lattice)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.layers).expect("circuits serialize")
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn range(&self) -> i64 {
        self.range
    }

    pub fn layers(&self) -> &[Vec<GateOp>] {
        &self.layers
    }

    pub fn gate_count(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    /// The first `depth` layers.
    pub fn truncated(&self, depth: usize) -> LocalCircuit {
        LocalCircuit { n: self.n, layers: self.layers[..depth.min(self.layers.len())].to_vec(), range: self.range }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &LocalCircuit) -> Result<LocalCircuit> {
        if self.n != next.n {
            return contract(format!("cannot compose circuits on {} and {} qubits", self.n, next.n));
        }
        let mut layers = self.layers.clone();
        layers.extend(next.layers.iter().cloned());
        Ok(LocalCircuit { n: self.n, layers, range: self.range.max(next.range) })
    }

    pub fn inverse(&self) -> Result<LocalCircuit> {
        let layers = self
            .layers
            .iter()
            .rev()
            .map(|layer| {
                layer
                    .iter()
                    .map(|g| match g.gate.inverse() {
                        Some(inv) => Ok(GateOp::new(inv, g.sites.clone())),
                        None => Err(Error::UnsupportedGate(format!("{} has no inverse in the gate set", g.gate))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LocalCircuit { n: self.n, layers, range: self.range })
    }

    /// Smallest region containing the support of `U† O U` for every `O` on `region`.
    pub fn heisenberg_support(&self, region: &Region) -> Region {
        let mut inside = vec![false; self.n];
        for q in region.iter() {
            inside[q] = true;
        }
        for layer in self.layers.iter().rev() {
            for g in layer {
                if g.sites.iter().any(|&q| inside[q]) {
                    for &q in &g.sites {
                        inside[q] = true;
                    }
                }
            }
        }
        Region::new((0..self.n).filter(|&q| inside[q]))
    }

    /// Keeps only the gates supported inside `B(r)`; the layer count is unchanged.
    pub fn localize(&self, lattice: &Lattice, region: &Region, r: i64) -> LocalCircuit {
        let ball = lattice.neighborhood(region, r);
        let layers = self
            .layers
            .iter()
            .map(|layer| layer.iter().filter(|g| g.sites.iter().all(|&q| ball.contains(q))).cloned().collect())
            .collect();
        LocalCircuit { n: self.n, layers, range: self.range }
    }

    /// `U† P U` where `U` applies the layers in order.
    pub fn heisenberg_evolve(&self, p: &PauliOp) -> Result<PauliOp> {
        self.check_size(p)?;
        let mut out = p.clone();
        for layer in self.layers.iter().rev() {
            for g in layer {
                let inv = g
                    .gate
                    .inverse()
                    .ok_or_else(|| Error::UnsupportedGate(format!("{} is not a Clifford gate", g.gate)))?;
                GateOp::new(inv, g.sites.clone()).conjugate(&mut out)?;
            }
        }
        Ok(out)
    }

    /// `U P U†`.
    pub fn schrodinger_evolve(&self, p: &PauliOp) -> Result<PauliOp> {
        self.check_size(p)?;
        let mut out = p.clone();
        for layer in &self.layers {
            for g in layer {
                g.conjugate(&mut out)?;
            }
        }
        Ok(out)
    }

    fn check_size(&self, p: &PauliOp) -> Result<()> {
        if p.num_qubits() != self.n {
            return contract(format!("operator on {} qubits, circuit on {}", p.num_qubits(), self.n));
        }
        Ok(())
    }
}

/// Appends gates to the earliest layer after every gate they share a site with.
#[derive(Clone, Debug)]
pub struct CircuitBuilder {
    n: usize,
    layers: Vec<Vec<GateOp>>,
    frontier: Vec<usize>,
}

impl CircuitBuilder {
    pub fn new(n: usize) -> Self {
        Self { n, layers: Vec::new(), frontier: vec![0; n] }
    }

    pub fn push(&mut self, gate: Gate, sites: &[usize]) -> &mut Self {
        let layer = sites.iter().map(|&q| self.frontier[q]).max().unwrap_or(0);
        if layer == self.layers.len() {
            self.layers.push(Vec::new());
        }
        self.layers[layer].push(GateOp::new(gate, sites.to_vec()));
        for &q in sites {
            self.frontier[q] = layer + 1;
        }
        self
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn build(self, lattice: &Lattice) -> Result<LocalCircuit> {
        LocalCircuit::new(self.layers, lattice)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Pauli;
    use proptest::prelude::*;

    fn ring(n: usize) -> Lattice {
        Lattice::new(vec![2 * n as i64], (0..n).map(|i| vec![2 * i as i64]).collect()).unwrap()
    }

    fn p(s: &str) -> PauliOp {
        s.parse().unwrap()
    }

    fn single(gate: Gate, sites: &[usize], n: usize) -> LocalCircuit {
        let mut b = CircuitBuilder::new(n);
        b.push(gate, sites);
        b.build(&ring(n)).unwrap()
    }

    #[test]
    fn cnot_spreads_x_forward() {
        let c = single(Gate::Cnot, &[0, 1], 2);
        assert_eq!(c.heisenberg_evolve(&p("XI")).unwrap(), p("XX"));
        assert_eq!(c.heisenberg_evolve(&p("IZ")).unwrap(), p("ZZ"));
        assert_eq!(c.heisenberg_evolve(&p("YY")).unwrap(), p("-XZ"));
    }

    #[test]
    fn single_qubit_tables() {
        let h = single(Gate::H, &[0], 1);
        assert_eq!(h.schrodinger_evolve(&p("Y")).unwrap(), p("-Y"));
        let s = single(Gate::S, &[0], 1);
        assert_eq!(s.schrodinger_evolve(&p("X")).unwrap(), p("Y"));
        assert_eq!(s.heisenberg_evolve(&p("X")).unwrap(), p("-Y"));
        let cz = single(Gate::Cz, &[0, 1], 2);
        assert_eq!(cz.schrodinger_evolve(&p("XX")).unwrap(), p("YY"));
        assert_eq!(cz.schrodinger_evolve(&p("XI")).unwrap(), p("XZ"));
    }

    #[test]
    fn empty_circuit_is_identity() {
        let c = LocalCircuit::empty(3);
        assert_eq!(c.heisenberg_evolve(&p("XYZ")).unwrap(), p("XYZ"));
        assert_eq!(c.heisenberg_support(&Region::new([1])), Region::new([1]));
    }

    #[test]
    fn t_gate_is_rejected() {
        let c = single(Gate::T, &[0], 1);
        assert!(matches!(c.heisenberg_evolve(&p("X")), Err(Error::UnsupportedGate(_))));
        assert_eq!(c.heisenberg_support(&Region::new([0])), Region::new([0]));
    }

    #[test]
    fn builder_packs_disjoint_gates() {
        let mut b = CircuitBuilder::new(4);
        b.push(Gate::H, &[0]).push(Gate::H, &[2]).push(Gate::Cnot, &[0, 1]).push(Gate::Cnot, &[2, 3]);
        let c = b.build(&ring(4)).unwrap();
        assert_eq!(c.depth(), 2);
        assert_eq!(c.range(), 2);
    }

    #[test]
    fn overlapping_layer_rejected() {
        let layers = vec![vec![GateOp::new(Gate::H, vec![0]), GateOp::new(Gate::Cnot, vec![0, 1])]];
        assert!(LocalCircuit::new(layers, &ring(2)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = single(Gate::Cnot, &[1, 0], 3);
        assert_eq!(c.to_json(), r#"[[{"gate":"CNOT","sites":[1,0]}]]"#);
        assert_eq!(LocalCircuit::from_json(&c.to_json(), &ring(3)).unwrap(), c);
    }

    #[test]
    fn localize_with_large_radius_is_identity() {
        let mut b = CircuitBuilder::new(6);
        b.push(Gate::Cnot, &[0, 1]).push(Gate::Cnot, &[1, 2]).push(Gate::H, &[5]);
        let lattice = ring(6);
        let c = b.build(&lattice).unwrap();
        assert_eq!(c.localize(&lattice, &Region::new([0]), lattice.diameter()), c);
        let none = c.localize(&lattice, &Region::new([4]), 0);
        assert_eq!(none.gate_count(), 0);
        assert_eq!(none.depth(), c.depth());
    }

    fn random_circuit(n: usize, depth: usize, choices: &[(u8, usize, usize)]) -> LocalCircuit {
        let gates = [Gate::H, Gate::S, Gate::Sdg, Gate::X, Gate::Y, Gate::Z, Gate::Cnot, Gate::Cz];
        let mut b = CircuitBuilder::new(n);
        for &(g, a, off) in choices.iter().take(depth * n) {
            let gate = gates[g as usize % gates.len()];
            let a = a % n;
            if gate.arity() == 2 {
                b.push(gate, &[a, (a + 1 + off % (n - 1)) % n]);
            } else {
                b.push(gate, &[a]);
            }
        }
        b.build(&ring(n)).unwrap()
    }

    fn random_pauli(n: usize, letters: &[u8], negative: bool) -> PauliOp {
        let mut op = PauliOp::identity(n);
        for (q, &l) in letters.iter().take(n).enumerate() {
            op.set(q, [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][l as usize % 4]);
        }
        op.with_sign(negative)
    }

    proptest! {
        #[test]
        fn heisenberg_inverts_schrodinger(
            choices in proptest::collection::vec((any::<u8>(), 0usize..8, 0usize..8), 32),
            letters in proptest::collection::vec(0u8..4, 8),
            neg in any::<bool>(),
        ) {
            let c = random_circuit(8, 4, &choices);
            let op = random_pauli(8, &letters, neg);
            let forward = c.schrodinger_evolve(&op).unwrap();
            prop_assert_eq!(c.heisenberg_evolve(&forward).unwrap(), op.clone());
            prop_assert_eq!(c.inverse().unwrap().schrodinger_evolve(&op).unwrap(), c.heisenberg_evolve(&op).unwrap());
        }

        #[test]
        fn evolved_support_inside_light_cone(
            choices in proptest::collection::vec((any::<u8>(), 0usize..10, 0usize..10), 30),
            letters in proptest::collection::vec(0u8..4, 3),
            start in 0usize..8,
        ) {
            let c = random_circuit(10, 3, &choices);
            let region = Region::new(start..start + 3);
            let mut op = PauliOp::identity(10);
            for (i, &l) in letters.iter().enumerate() {
                op.set(start + i, [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][l as usize]);
            }
            let cone = c.heisenberg_support(&region);
            let evolved = c.heisenberg_evolve(&op).unwrap();
            prop_assert!(evolved.support().iter().all(|&q| cone.contains(q)));
        }

        #[test]
        fn localization_exact_inside_cone(
            choices in proptest::collection::vec((any::<u8>(), 0usize..12, 0usize..2), 48),
            letters in proptest::collection::vec(0u8..4, 2),
            start in 0usize..10,
        ) {
            // nearest-neighbour gates on a ring of 12
            let lattice = ring(12);
            let gates = [Gate::H, Gate::S, Gate::Cnot, Gate::Cz];
            let mut b = CircuitBuilder::new(12);
            for &(g, a, dir) in &choices {
                let gate = gates[g as usize % 4];
                if gate.arity() == 2 {
                    b.push(gate, &[a, if dir == 0 { (a + 1) % 12 } else { (a + 11) % 12 }]);
                } else {
                    b.push(gate, &[a]);
                }
            }
            let c = b.build(&lattice).unwrap();
            let region = Region::new([start, start + 1]);
            let cone = c.heisenberg_support(&region);
            let r = (0..=lattice.diameter()).find(|&r| cone.is_subset(&lattice.neighborhood(&region, r))).unwrap();
            let local = c.localize(&lattice, &region, r);
            let mut op = PauliOp::identity(12);
            op.set(start, [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][letters[0] as usize]);
            op.set(start + 1, [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][letters[1] as usize]);
            prop_assert_eq!(c.heisenberg_evolve(&op).unwrap(), local.heisenberg_evolve(&op).unwrap());
        }
    }
}
