//! Measurement outcome distributions and Shannon entropy.

use serde::Serialize;

use crate::error::{contract, Result};

const SUM_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutcomeDistribution {
    labels: Vec<String>,
    probs: Vec<f64>,
}

impl OutcomeDistribution {
    /// Probabilities must be non-negative (tiny rounding below zero is clipped)
    /// and sum to one.
    pub fn new(labels: Vec<String>, probs: Vec<f64>) -> Result<Self> {
        if labels.len() != probs.len() {
            return contract(format!("{} labels for {} probabilities", labels.len(), probs.len()));
        }
        if let Some(p) = probs.iter().find(|&&p| p < -SUM_TOLERANCE || !p.is_finite()) {
            return contract(format!("invalid probability {p}"));
        }
        let probs: Vec<f64> = probs.into_iter().map(|p| p.max(0.0)).collect();
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return contract(format!("probabilities sum to {total}"));
        }
        Ok(Self { labels, probs })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, label: &str) -> Option<f64> {
        self.labels.iter().position(|l| l == label).map(|i| self.probs[i])
    }

    /// Shannon entropy in bits, with `0·log 0 = 0`.
    pub fn entropy(&self) -> f64 {
        entropy_bits(&self.probs)
    }

    /// Marginal over the character at `position` of each label.
    pub fn marginal(&self, position: usize) -> Result<OutcomeDistribution> {
        let mut labels: Vec<String> = Vec::new();
        let mut probs: Vec<f64> = Vec::new();
        for (label, &p) in self.labels.iter().zip(&self.probs) {
            let Some(c) = label.chars().nth(position) else {
                return contract(format!("label {label:?} has no position {position}"));
            };
            let key = c.to_string();
            match labels.iter().position(|l| *l == key) {
                Some(i) => probs[i] += p,
                None => {
                    labels.push(key);
                    probs.push(p);
                }
            }
        }
        OutcomeDistribution::new(labels, probs)
    }
}

pub fn entropy_bits(probs: &[f64]) -> f64 {
    // adding 0.0 turns the -0.0 of a certain outcome into 0.0
    probs.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.log2()).sum::<f64>() + 0.0
}
