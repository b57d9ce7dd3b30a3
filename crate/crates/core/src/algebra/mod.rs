//! GF(2) linear algebra and binary-symplectic Pauli algebra.

mod bits;
mod matrix;
mod pauli;
mod symplectic;

pub use bits::BitVec;
pub use matrix::{BitMatrix, RowSpace};
pub use pauli::{symplectic_commutes, Pauli, PauliOp};
pub use symplectic::{
    centralizer_basis, commutation_matrix, symplectic_gram_schmidt, symplectic_matrix, symplectic_product,
};
