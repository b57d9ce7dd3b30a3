pub mod algebra;
pub mod cli;
pub mod code;
pub mod correctability;
pub mod dynamics;
pub mod error;
pub mod lattice;
pub mod rng;
pub mod stats;
pub mod uncertainty;

pub use error::{Error, Result};
