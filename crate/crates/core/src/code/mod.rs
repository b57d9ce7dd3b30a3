//! Stabilizer codes embedded in a periodic lattice.

mod distance;
mod io;
mod toric;

pub use distance::{distance, distance_with_budget, CodeDistanceCertificate, DISTANCE_BUDGET};
pub use io::{load_code, CodeDocument};
pub use toric::{build_toric_2d, build_toric_3d, Toric2dLayout};

use crate::algebra::{
    centralizer_basis, symplectic_gram_schmidt, symplectic_matrix, BitMatrix, BitVec, PauliOp, RowSpace,
};
use crate::error::{Error, Result};
use crate::lattice::{Lattice, Region};

/// An anticommuting pair of logical operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalPair {
    pub x: PauliOp,
    pub z: PauliOp,
}

/// A validated stabilizer code. Generators commute pairwise and are
/// independent; the logical basis consists of `k` canonical pairs.
#[derive(Clone, Debug)]
pub struct StabilizerCode {
    name: String,
    generators: Vec<PauliOp>,
    lattice: Lattice,
    xi: i64,
    k: usize,
    logical_basis: Vec<LogicalPair>,
    stabilizer_space: RowSpace,
}

impl PartialEq for StabilizerCode {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.generators == other.generators
            && self.lattice == other.lattice
            && self.logical_basis == other.logical_basis
    }
}

impl StabilizerCode {
    /// Validates the generators and either checks the supplied logical basis
    /// or derives one.
    pub fn new(
        name: impl Into<String>,
        generators: Vec<PauliOp>,
        lattice: Lattice,
        logical_basis: Option<Vec<LogicalPair>>,
    ) -> Result<Self> {
        let n = lattice.num_sites();
        if let Some(i) = generators.iter().position(|g| g.num_qubits() != n) {
            return Err(Error::Validation(format!(
                "generator {i} acts on {} qubits but the lattice has {n} sites",
                generators[i].num_qubits()
            )));
        }
        for (i, a) in generators.iter().enumerate() {
            for (j, b) in generators.iter().enumerate().skip(i + 1) {
                if a.anticommutes_unchecked(b) {
                    return Err(Error::Validation(format!("generators {i} ({a}) and {j} ({b}) anticommute")));
                }
            }
        }
        let matrix = symplectic_matrix(&generators, n);
        let rank = matrix.rank();
        if rank != generators.len() {
            return Err(Error::Validation(format!(
                "generators are dependent: rank {rank} < {} generators",
                generators.len()
            )));
        }
        let k = n - rank;
        let stabilizer_space = RowSpace::new(&matrix);
        let xi = generators.iter().map(|g| lattice.region_diameter(&Region::new(g.support()))).max().unwrap_or(0);
        let mut code =
            Self { name: name.into(), generators, lattice, xi, k, logical_basis: Vec::new(), stabilizer_space };
        code.logical_basis = match logical_basis {
            Some(basis) => {
                code.check_logical_basis(&basis)?;
                basis
            }
            None => code.derive_logical_basis()?,
        };
        Ok(code)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.lattice.num_sites()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Interaction length: the largest generator support diameter.
    pub fn xi(&self) -> i64 {
        self.xi
    }

    pub fn generators(&self) -> &[PauliOp] {
        &self.generators
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn logical_basis(&self) -> &[LogicalPair] {
        &self.logical_basis
    }

    /// Generators as `x ‖ z` rows.
    pub fn generator_matrix(&self) -> BitMatrix {
        symplectic_matrix(&self.generators, self.n())
    }

    pub fn is_css(&self) -> bool {
        self.generators.iter().all(|g| g.is_x_type() || g.is_z_type())
    }

    /// Commutation syndrome against every generator (bit set = anticommutes).
    pub fn syndrome(&self, p: &PauliOp) -> BitVec {
        BitVec::from_bools(&self.generators.iter().map(|g| g.anticommutes_unchecked(p)).collect::<Vec<_>>())
    }

    pub fn commutes_with_all(&self, p: &PauliOp) -> bool {
        p.num_qubits() == self.n() && self.generators.iter().all(|g| !g.anticommutes_unchecked(p))
    }

    /// Whether `±p` lies in the stabilizer group (sign ignored).
    pub fn in_stabilizer_group(&self, p: &PauliOp) -> bool {
        p.num_qubits() == self.n() && self.stabilizer_space.contains(&p.symplectic())
    }

    /// Commutes with every generator without being a stabilizer.
    pub fn is_logical(&self, p: &PauliOp) -> bool {
        self.commutes_with_all(p) && !self.in_stabilizer_group(p)
    }

    /// Product of the generators selected by `coefficients` (exact sign).
    pub fn stabilizer_element(&self, coefficients: &BitVec) -> PauliOp {
        let mut acc = PauliOp::identity(self.n());
        for a in coefficients.iter_ones() {
            acc = acc.multiply_unchecked(&self.generators[a]);
        }
        acc
    }

    fn check_logical_basis(&self, basis: &[LogicalPair]) -> Result<()> {
        if basis.len() != self.k {
            return Err(Error::Validation(format!("expected {} logical pairs, got {}", self.k, basis.len())));
        }
        let ops: Vec<&PauliOp> = basis.iter().flat_map(|p| [&p.x, &p.z]).collect();
        for (i, op) in ops.iter().enumerate() {
            if !self.is_logical(op) {
                return Err(Error::Validation(format!("logical operator {i} ({op}) is not a nontrivial logical")));
            }
        }
        for (i, a) in ops.iter().enumerate() {
            for (j, b) in ops.iter().enumerate().skip(i + 1) {
                let partners = i / 2 == j / 2;
                if a.anticommutes_unchecked(b) != partners {
                    return Err(Error::Validation(format!(
                        "logical operators {i} and {j} violate canonical commutation relations"
                    )));
                }
            }
        }
        Ok(())
    }

    fn derive_logical_basis(&self) -> Result<Vec<LogicalPair>> {
        let logicals = logical_complement(&self.generators, self.n());
        let (pairs, isotropic) = symplectic_gram_schmidt(&logicals);
        if !isotropic.is_empty() || pairs.len() != self.k {
            return Err(Error::Validation(format!(
                "could not pair logical operators: {} pairs, {} unpaired, expected k = {}",
                pairs.len(),
                isotropic.len(),
                self.k
            )));
        }
        pairs
            .into_iter()
            .map(|(a, b)| Ok(LogicalPair { x: PauliOp::from_symplectic(&a)?, z: PauliOp::from_symplectic(&b)? }))
            .collect()
    }
}

/// Centralizer vectors completing the stabilizer space to the full
/// centralizer. X-type candidates are taken first, then Z-type, then mixed,
/// each by increasing weight, so CSS codes get pure-type logicals.
pub(crate) fn logical_complement(generators: &[PauliOp], n: usize) -> Vec<BitVec> {
    let mut candidates: Vec<PauliOp> =
        centralizer_basis(generators, n).iter().map(|v| PauliOp::from_symplectic(v).expect("even length")).collect();
    // split mixed basis vectors into pure parts when both parts stay in the centralizer
    let mut split = Vec::new();
    for c in &candidates {
        let xs = PauliOp::from_bits(c.x_bits().clone(), BitVec::zeros(n), false).expect("sizes");
        let zs = PauliOp::from_bits(BitVec::zeros(n), c.z_bits().clone(), false).expect("sizes");
        if !xs.is_identity() && !zs.is_identity() && generators.iter().all(|g| !g.anticommutes_unchecked(&xs)) {
            split.push(xs);
            split.push(zs);
        }
    }
    candidates.extend(split);
    let class = |p: &PauliOp| {
        if p.is_x_type() {
            0
        } else if p.is_z_type() {
            1
        } else {
            2
        }
    };
    candidates.sort_by_key(|p| (class(p), p.weight(), p.symplectic()));
    let mut span = RowSpace::new(&symplectic_matrix(generators, n));
    candidates.into_iter().map(|c| c.symplectic()).filter(|v| span.insert(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_lattice(n: usize) -> Lattice {
        Lattice::new(vec![2 * n as i64], (0..n).map(|i| vec![2 * i as i64]).collect()).unwrap()
    }

    fn ops(list: &[&str]) -> Vec<PauliOp> {
        list.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn repetition_code_logicals() {
        let code = StabilizerCode::new("rep3", ops(&["ZZI", "IZZ"]), chain_lattice(3), None).unwrap();
        assert_eq!(code.k(), 1);
        let pair = &code.logical_basis()[0];
        // Oracle: (XXX, ZII) up to multiplication by stabilizers.
        let xxx: PauliOp = "XXX".parse().unwrap();
        let zii: PauliOp = "ZII".parse().unwrap();
        assert!(code.in_stabilizer_group(&pair.x.multiply(&xxx).unwrap()));
        assert!(code.in_stabilizer_group(&pair.z.multiply(&zii).unwrap()));
        assert!(!pair.x.commutes_with(&pair.z).unwrap());
    }

    #[test]
    fn full_rank_code_has_no_logicals() {
        let code = StabilizerCode::new("bell", ops(&["XX", "ZZ"]), chain_lattice(2), None).unwrap();
        assert_eq!(code.k(), 0);
        assert!(code.logical_basis().is_empty());
    }

    #[test]
    fn anticommuting_generators_rejected() {
        let err = StabilizerCode::new("bad", ops(&["XI", "ZI"]), chain_lattice(2), None).unwrap_err();
        assert!(err.to_string().contains("generators 0"), "{err}");
    }

    #[test]
    fn dependent_generators_rejected() {
        let err = StabilizerCode::new("dep", ops(&["ZZI", "IZZ", "ZIZ"]), chain_lattice(3), None).unwrap_err();
        assert!(err.to_string().contains("dependent"), "{err}");
    }

    #[test]
    fn five_qubit_code_has_one_logical() {
        let gens = ops(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]);
        let code = StabilizerCode::new("five", gens, chain_lattice(5), None).unwrap();
        // rank n - k = 4
        assert_eq!(code.generator_matrix().rank(), 4);
        assert_eq!(code.k(), 1);
        let pair = &code.logical_basis()[0];
        assert!(code.is_logical(&pair.x) && code.is_logical(&pair.z));
    }

    #[test]
    fn bad_logical_basis_rejected() {
        let basis = vec![LogicalPair { x: "XXX".parse().unwrap(), z: "ZZI".parse().unwrap() }];
        assert!(StabilizerCode::new("rep3", ops(&["ZZI", "IZZ"]), chain_lattice(3), Some(basis)).is_err());
    }
}
