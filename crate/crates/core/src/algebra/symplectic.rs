//! Helpers on the binary symplectic space `GF(2)^{2n}`.

use super::bits::BitVec;
use super::matrix::BitMatrix;
use super::pauli::PauliOp;

/// Rows `x ‖ z`, one per operator.
pub fn symplectic_matrix(ops: &[PauliOp], n: usize) -> BitMatrix {
    let rows = ops.iter().map(PauliOp::symplectic).collect();
    BitMatrix::from_rows(rows, 2 * n).expect("operators share the qubit count")
}

/// Rows `z ‖ x`: multiplying a symplectic vector `v` by this matrix yields the
/// commutation syndrome of `v` against every operator.
pub fn commutation_matrix(ops: &[PauliOp], n: usize) -> BitMatrix {
    let rows = ops.iter().map(|p| p.z_bits().concat(p.x_bits())).collect();
    BitMatrix::from_rows(rows, 2 * n).expect("operators share the qubit count")
}

/// Symplectic form on `x ‖ z` vectors.
pub fn symplectic_product(a: &BitVec, b: &BitVec) -> bool {
    let n = a.len() / 2;
    let (ax, az) = (a.slice(0, n), a.slice(n, n));
    let (bx, bz) = (b.slice(0, n), b.slice(n, n));
    ax.dot(&bz) ^ az.dot(&bx)
}

/// Basis of all Paulis commuting with every operator in `ops`, as `x ‖ z` vectors.
pub fn centralizer_basis(ops: &[PauliOp], n: usize) -> Vec<BitVec> {
    commutation_matrix(ops, n).nullspace()
}

/// Symplectic Gram–Schmidt. Returns canonical pairs `(a_i, b_i)` with
/// `⟨a_i, b_j⟩ = δ_ij` and `⟨a_i,a_j⟩ = ⟨b_i,b_j⟩ = 0`, plus the vectors left
/// over that commute with everything (the isotropic remainder).
pub fn symplectic_gram_schmidt(vectors: &[BitVec]) -> (Vec<(BitVec, BitVec)>, Vec<BitVec>) {
    let mut pool: Vec<BitVec> = vectors.iter().filter(|v| !v.is_zero()).cloned().collect();
    let mut pairs = Vec::new();
    let mut isotropic = Vec::new();
    while let Some(a) = (!pool.is_empty()).then(|| pool.remove(0)) {
        let Some(j) = pool.iter().position(|v| symplectic_product(&a, v)) else {
            isotropic.push(a);
            continue;
        };
        let b = pool.remove(j);
        for v in pool.iter_mut() {
            let with_b = symplectic_product(v, &b);
            let with_a = symplectic_product(v, &a);
            if with_b {
                v.xor_assign(&a);
            }
            if with_a {
                v.xor_assign(&b);
            }
        }
        pool.retain(|v| !v.is_zero());
        pairs.push((a, b));
    }
    (pairs, isotropic)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_schmidt_produces_canonical_pairs() {
        let ops: Vec<BitVec> =
            ["XXI", "ZZI", "IYX", "ZIZ", "YYY"].iter().map(|s| s.parse::<PauliOp>().unwrap().symplectic()).collect();
        let (pairs, iso) = symplectic_gram_schmidt(&ops);
        for (i, (a, b)) in pairs.iter().enumerate() {
            assert!(symplectic_product(a, b));
            for (j, (c, d)) in pairs.iter().enumerate() {
                if i != j {
                    assert!(!symplectic_product(a, c));
                    assert!(!symplectic_product(a, d));
                    assert!(!symplectic_product(b, d));
                }
            }
            for v in &iso {
                assert!(!symplectic_product(a, v));
                assert!(!symplectic_product(b, v));
            }
        }
    }

    #[test]
    fn centralizer_of_repetition_checks() {
        let gens: Vec<PauliOp> = ["ZZI", "IZZ"].iter().map(|s| s.parse().unwrap()).collect();
        let basis = centralizer_basis(&gens, 3);
        assert_eq!(basis.len(), 2 * 3 - 2);
        for v in &basis {
            let p = PauliOp::from_symplectic(v).unwrap();
            for g in &gens {
                assert!(p.commutes_with(g).unwrap());
            }
        }
    }
}
