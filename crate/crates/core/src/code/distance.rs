//! Exact code distance by exhaustive weight enumeration.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::StabilizerCode;
use crate::algebra::{Pauli, PauliOp};
use crate::error::{contract, Error, Result};

/// Upper limit on the number of candidate operators the search may cover.
pub const DISTANCE_BUDGET: u128 = 1 << 30;

const CSS_METHOD: &str = "css-exhaustive-weight-enumeration";
const GENERAL_METHOD: &str = "exhaustive-weight-enumeration";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeDistanceCertificate {
    pub d: usize,
    pub witness: PauliOp,
    pub method: String,
    /// Candidate count covered by the weights searched.
    pub candidates: u128,
}

pub fn distance(code: &StabilizerCode) -> Result<CodeDistanceCertificate> {
    distance_with_budget(code, DISTANCE_BUDGET)
}

/// Minimum weight of a logical operator. Supports are scanned in increasing
/// weight and lexicographic order, so the witness is the first minimum-weight
/// logical in that order. Refuses instead of guessing when the next weight
/// level would push the candidate count past `budget`.
pub fn distance_with_budget(code: &StabilizerCode, budget: u128) -> Result<CodeDistanceCertificate> {
    if code.k() == 0 {
        return contract("distance is undefined for a code with k = 0");
    }
    let sectors: Vec<Sector> = if code.is_css() {
        vec![Sector::new(code, &[Pauli::X]), Sector::new(code, &[Pauli::Z])]
    } else {
        vec![Sector::new(code, &[Pauli::X, Pauli::Y, Pauli::Z])]
    };
    let method = if code.is_css() { CSS_METHOD } else { GENERAL_METHOD };
    let n = code.n();
    let mut covered: u128 = 0;
    for w in 1..=n {
        for sector in &sectors {
            let level = binomial(n as u128, w as u128).saturating_mul((sector.letters.len() as u128).pow(w as u32));
            covered = covered.saturating_add(level);
            if covered > budget {
                return Err(Error::DistanceInfeasible(format!(
                    "exact distance infeasible: weight {w} would exceed the budget of {budget} candidates \
                     (n = {n}, no logical of weight < {w} found)"
                )));
            }
            if let Some(witness) = sector.search(code, w) {
                return Ok(CodeDistanceCertificate { d: w, witness, method: method.to_string(), candidates: covered });
            }
        }
    }
    contract("no logical operator found although k > 0")
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Single-qubit operators restricted to a letter set, with their syndromes
/// packed into words.
struct Sector {
    letters: Vec<Pauli>,
    words: usize,
    /// `columns[q * letters + l]` is the syndrome of letter `l` on qubit `q`.
    columns: Vec<Vec<u64>>,
    /// Syndrome → sorted list of `(qubit, letter index)`.
    lookup: HashMap<Vec<u64>, Vec<(usize, usize)>>,
}

impl Sector {
    fn new(code: &StabilizerCode, letters: &[Pauli]) -> Self {
        let m = code.generators().len();
        let words = m.div_ceil(64).max(1);
        let n = code.n();
        let mut columns = Vec::with_capacity(n * letters.len());
        let mut lookup: HashMap<Vec<u64>, Vec<(usize, usize)>> = HashMap::new();
        for q in 0..n {
            for (li, &letter) in letters.iter().enumerate() {
                let (lx, lz) = letter.bits();
                let mut col = vec![0u64; words];
                for (g, gen) in code.generators().iter().enumerate() {
                    if (lx && gen.z_bits().get(q)) ^ (lz && gen.x_bits().get(q)) {
                        col[g / 64] |= 1 << (g % 64);
                    }
                }
                lookup.entry(col.clone()).or_default().push((q, li));
                columns.push(col);
            }
        }
        Self { letters: letters.to_vec(), words, columns, lookup }
    }

    fn search(&self, code: &StabilizerCode, w: usize) -> Option<PauliOp> {
        let n = code.n();
        if w == 1 {
            return self.finish(code, &[], &vec![0; self.words], None);
        }
        (0..=n - w).into_par_iter().find_map_first(|q0| {
            let mut prefix = Vec::with_capacity(w);
            let mut syndrome = vec![0u64; self.words];
            self.branch(code, w, q0, &mut prefix, &mut syndrome)
        })
    }

    /// Places qubit `q` in every allowed letter, then recurses.
    fn branch(
        &self,
        code: &StabilizerCode,
        w: usize,
        q: usize,
        prefix: &mut Vec<(usize, usize)>,
        syndrome: &mut [u64],
    ) -> Option<PauliOp> {
        let n = code.n();
        for li in 0..self.letters.len() {
            let col = &self.columns[q * self.letters.len() + li];
            xor_into(syndrome, col);
            prefix.push((q, li));
            let found = if prefix.len() + 1 == w {
                self.finish(code, prefix, syndrome, Some(q))
            } else {
                let remaining = w - prefix.len();
                (q + 1..=n - remaining).find_map(|next| self.branch(code, w, next, prefix, syndrome))
            };
            prefix.pop();
            xor_into(syndrome, col);
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// Completes `prefix` with one more qubit whose syndrome cancels it.
    fn finish(
        &self,
        code: &StabilizerCode,
        prefix: &[(usize, usize)],
        syndrome: &[u64],
        after: Option<usize>,
    ) -> Option<PauliOp> {
        let matches = self.lookup.get(syndrome)?;
        let start = after.map_or(0, |a| matches.partition_point(|&(q, _)| q <= a));
        matches[start..].iter().find_map(|&last| {
            let op = self.assemble(code.n(), prefix.iter().copied().chain([last]));
            (!code.in_stabilizer_group(&op)).then_some(op)
        })
    }

    fn assemble(&self, n: usize, terms: impl Iterator<Item = (usize, usize)>) -> PauliOp {
        let mut op = PauliOp::identity(n);
        for (q, li) in terms {
            op.set(q, self.letters[li]);
        }
        op
    }
}

fn xor_into(acc: &mut [u64], col: &[u64]) {
    for (a, c) in acc.iter_mut().zip(col) {
        *a ^= c;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::build_toric_2d;
    use crate::lattice::Lattice;

    fn chain(n: usize) -> Lattice {
        Lattice::new(vec![2 * n as i64], (0..n).map(|i| vec![2 * i as i64]).collect()).unwrap()
    }

    /// Brute force over all 4^n Paulis.
    fn oracle_distance(code: &StabilizerCode) -> usize {
        let n = code.n();
        let mut best = usize::MAX;
        for idx in 1..4usize.pow(n as u32) {
            let mut op = PauliOp::identity(n);
            let mut rest = idx;
            for q in 0..n {
                op.set(q, [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][rest % 4]);
                rest /= 4;
            }
            if op.weight() < best && code.is_logical(&op) {
                best = op.weight();
            }
        }
        best
    }

    fn check(cert: &CodeDistanceCertificate, code: &StabilizerCode) {
        assert_eq!(cert.witness.weight(), cert.d);
        assert!(code.is_logical(&cert.witness));
    }

    #[test]
    fn repetition_code_distance_one() {
        let code =
            StabilizerCode::new("rep3", vec!["ZZI".parse().unwrap(), "IZZ".parse().unwrap()], chain(3), None).unwrap();
        let cert = distance(&code).unwrap();
        assert_eq!(cert.d, 1);
        assert_eq!(cert.witness.to_string(), "ZII");
        check(&cert, &code);
    }

    #[test]
    fn five_qubit_code_matches_oracle() {
        let gens = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"].iter().map(|s| s.parse().unwrap()).collect();
        let code = StabilizerCode::new("five", gens, chain(5), None).unwrap();
        let cert = distance(&code).unwrap();
        assert_eq!(cert.d, oracle_distance(&code));
        assert_eq!(cert.d, 3);
        assert_eq!(cert.method, GENERAL_METHOD);
        check(&cert, &code);
    }

    #[test]
    fn toric_l2_matches_oracle() {
        let code = build_toric_2d(2).unwrap();
        let cert = distance(&code).unwrap();
        assert_eq!(cert.d, oracle_distance(&code));
        assert_eq!(cert.d, 2);
        check(&cert, &code);
    }

    #[test]
    fn toric_distance_equals_l() {
        for l in 3..=4 {
            let code = build_toric_2d(l).unwrap();
            let cert = distance(&code).unwrap();
            assert_eq!(cert.d, l);
            check(&cert, &code);
        }
    }

    #[test]
    fn budget_refusal_is_explicit() {
        let code = build_toric_2d(3).unwrap();
        let err = distance_with_budget(&code, 100).unwrap_err();
        assert!(matches!(err, Error::DistanceInfeasible(_)));
    }

    #[test]
    fn zero_logical_code_is_contract_error() {
        let code =
            StabilizerCode::new("bell", vec!["XX".parse().unwrap(), "ZZ".parse().unwrap()], chain(2), None).unwrap();
        assert!(matches!(distance(&code), Err(Error::Contract(_))));
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(72, 6), 156_238_908);
        assert_eq!(binomial(3, 4), 0);
    }
}
