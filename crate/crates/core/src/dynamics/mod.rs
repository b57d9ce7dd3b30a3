//! Local Clifford circuits, stabilizer states and preparation dynamics.

mod circuit;
mod defects;
mod encoder;
mod tableau;
mod theorem1;

pub use circuit::{CircuitBuilder, Gate, GateOp, LocalCircuit};
pub use defects::{dissipative_prep_mc, run_until_clear, DefectConfig, DefectDynamics, TrajectoryRow};
pub use encoder::{encoder_toric_2d, encoder_toric_2d_at, ToricEncoder};
pub use tableau::StabilizerState;
pub use theorem1::{theorem1_experiment, Theorem1Report, Theorem1Setup};
