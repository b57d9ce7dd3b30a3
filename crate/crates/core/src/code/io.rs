//! JSON code documents.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{LogicalPair, StabilizerCode};
use crate::algebra::PauliOp;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, METRIC_TAG};

/// On-disk form of a stabilizer code.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeDocument {
    pub n: usize,
    pub name: String,
    pub generators: Vec<PauliOp>,
    pub coords: Vec<Vec<i64>>,
    pub metric: String,
    pub extent: Vec<i64>,
    /// `[X̄, Z̄]` per logical qubit; derived at load time when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub logicals: Option<Vec<[PauliOp; 2]>>,
}

impl CodeDocument {
    pub fn from_code(code: &StabilizerCode) -> Self {
        Self {
            n: code.n(),
            name: code.name().to_string(),
            generators: code.generators().to_vec(),
            coords: code.lattice().all_coords().to_vec(),
            metric: METRIC_TAG.to_string(),
            extent: code.lattice().extent().to_vec(),
            logicals: Some(code.logical_basis().iter().map(|p| [p.x.clone(), p.z.clone()]).collect()),
        }
    }

    pub fn into_code(self) -> Result<StabilizerCode> {
        if self.metric != METRIC_TAG {
            return Err(Error::Validation(format!("unsupported metric {:?}, expected {METRIC_TAG:?}", self.metric)));
        }
        if self.coords.len() != self.n {
            return Err(Error::Validation(format!(
                "missing coordinates: {} entries for {} qubits",
                self.coords.len(),
                self.n
            )));
        }
        if let Some(i) = self.generators.iter().position(|g| g.num_qubits() != self.n) {
            return Err(Error::Validation(format!(
                "generator {i} has length {} but n = {}",
                self.generators[i].num_qubits(),
                self.n
            )));
        }
        let lattice = Lattice::new(self.extent, self.coords)?;
        let logicals = self.logicals.map(|ls| ls.into_iter().map(|[x, z]| LogicalPair { x, z }).collect());
        StabilizerCode::new(self.name, self.generators, lattice, logicals)
    }
}

impl StabilizerCode {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&CodeDocument::from_code(self)).expect("code documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<CodeDocument>(text)?.into_code()
    }
}

pub fn load_code(path: impl AsRef<Path>) -> Result<StabilizerCode> {
    StabilizerCode::from_json(&std::fs::read_to_string(path)?)
}
