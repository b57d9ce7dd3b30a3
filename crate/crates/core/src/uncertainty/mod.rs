//! Dense ground-space simulation, logical measurement statistics and
//! strip correlations.

mod dense;
mod distribution;
mod ground;
mod sampling;
mod theorem2;

pub use dense::{DenseState, DENSE_MAX_QUBITS};
pub use distribution::{entropy_bits, OutcomeDistribution};
pub use ground::{
    anyon_label, eq5_check, ground_space, in_ground_space, maassen_uffink_check, measure_distribution,
    s_matrix_numeric, AnyonBasis, Eq5Check, MaassenUffink, SMatrix, ANYON_LABELS,
};
pub use sampling::{uncertainty_samples, UncertaintyRow};
pub use theorem2::{theorem2_experiment, toric_strips, x_eigenstate_prep, Theorem2Report};
