//! Random ground states checked against both uncertainty relations.

use rayon::prelude::*;
use serde::Serialize;

use super::dense::DenseState;
use super::ground::{eq5_check, ground_space, maassen_uffink_check, s_matrix_numeric};
use crate::code::StabilizerCode;
use crate::error::Result;
use crate::rng::{trial_rng, trial_seed};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UncertaintyRow {
    pub sample: u64,
    pub seed: u64,
    #[serde(rename = "H1")]
    pub h1: f64,
    #[serde(rename = "H2")]
    pub h2: f64,
    pub bound: f64,
    pub eq5_sum: f64,
}

/// Haar-random ground states; sample `i` draws from `trial_rng(seed, i)`.
pub fn uncertainty_samples(code: &StabilizerCode, samples: u64, seed: u64) -> Result<Vec<UncertaintyRow>> {
    let ground = ground_space(code)?;
    let s = s_matrix_numeric(code)?;
    (0..samples)
        .into_par_iter()
        .map(|sample| {
            let mut rng = trial_rng(seed, sample);
            let state = DenseState::random_in_span(&ground, &mut rng)?;
            let mu = maassen_uffink_check(code, &s, &state)?;
            let eq5 = eq5_check(code, &state)?;
            Ok(UncertaintyRow {
                sample,
                seed: trial_seed(seed, sample),
                h1: mu.h1,
                h2: mu.h2,
                bound: mu.bound,
                eq5_sum: eq5.sum,
            })
        })
        .collect()
}
