//! Classical defect dynamics standing in for dissipative preparation.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{contract, Error, Result};
use crate::rng::{trial_rng, trial_seed};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DefectDynamics {
    /// Move along the row toward column 0, then down column 0 to the origin.
    Sweep,
    /// Hop to a uniformly random neighbour.
    Diffusive,
}

impl fmt::Display for DefectDynamics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DefectDynamics::Sweep => "sweep",
            DefectDynamics::Diffusive => "diffusive",
        })
    }
}

impl FromStr for DefectDynamics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sweep" => Ok(DefectDynamics::Sweep),
            "diffusive" => Ok(DefectDynamics::Diffusive),
            _ => Err(Error::Parse(format!("unknown dynamics {s:?}, expected sweep or diffusive"))),
        }
    }
}

/// Vertex defects on the `L×L` torus; vertex `(x, y)` has index `y·L + x`.
#[derive(Clone, Debug)]
pub struct DefectConfig {
    l: usize,
    /// `slot[v]` is one plus the position of the defect at `v` in `list`, or 0.
    slot: Vec<u32>,
    list: Vec<usize>,
    step: u64,
}

const GONE: usize = usize::MAX;

impl DefectConfig {
    fn from_occupancy(l: usize, occupied: &[bool]) -> Self {
        let list: Vec<usize> = (0..occupied.len()).filter(|&v| occupied[v]).collect();
        let mut cfg = Self { l, slot: vec![0; l * l], list, step: 0 };
        cfg.reindex();
        cfg
    }

    fn reindex(&mut self) {
        self.list.retain(|&v| v != GONE);
        for (i, &v) in self.list.iter().enumerate() {
            self.slot[v] = i as u32 + 1;
        }
    }

    pub fn from_defects(l: usize, defects: &[(usize, usize)]) -> Result<Self> {
        let mut occupied = vec![false; l * l];
        for &(x, y) in defects {
            if x >= l || y >= l {
                return contract(format!("defect ({x},{y}) outside the {l}x{l} torus"));
            }
            occupied[y * l + x] ^= true;
        }
        let cfg = Self::from_occupancy(l, &occupied);
        if cfg.count() % 2 == 1 {
            return contract("defect number must be even on the torus");
        }
        Ok(cfg)
    }

    /// Independent fair coin per vertex, redrawn until the parity is even.
    pub fn sample<R: Rng>(l: usize, rng: &mut R) -> Self {
        loop {
            let occupied: Vec<bool> = (0..l * l).map(|_| rng.gen()).collect();
            if occupied.iter().filter(|&&b| b).count() % 2 == 0 {
                return Self::from_occupancy(l, &occupied);
            }
        }
    }

    pub fn count(&self) -> usize {
        self.list.len()
    }

    pub fn is_clear(&self) -> bool {
        self.list.is_empty()
    }

    pub fn step_count(&self) -> u64 {
        self.step
    }

    pub fn defects(&self) -> Vec<(usize, usize)> {
        let mut vs = self.list.clone();
        vs.sort_unstable();
        vs.into_iter().map(|v| (v % self.l, v / self.l)).collect()
    }

    /// Half the largest nearest-neighbour torus Manhattan distance, rounded up.
    /// Each defect moves at most one unit per step and only vanishes by
    /// meeting another, so no such dynamics clears faster.
    pub fn lower_bound(&self) -> u64 {
        let l = self.l as i64;
        let mut worst = 0;
        for (x, y) in self.defects() {
            let (x, y) = (x as i64, y as i64);
            let nearest = (1..=l).find(|&r| {
                (-r..=r).any(|dx| {
                    let rest = r - dx.abs();
                    [rest, -rest].iter().any(|&dy| {
                        let v = ((y + dy).rem_euclid(l) * l + (x + dx).rem_euclid(l)) as usize;
                        (dx, dy) != (0, 0) && self.slot[v] != 0
                    })
                })
            });
            if let Some(r) = nearest {
                worst = worst.max(r);
            }
        }
        (worst as u64).div_ceil(2)
    }

    /// All defects move at once; coinciding defects annihilate in pairs.
    pub fn step_sweep(&mut self) {
        let l = self.l;
        let mut targets: Vec<usize> = self
            .list
            .iter()
            .map(|&v| {
                let (x, y) = (v % l, v / l);
                let (nx, ny) = if x != 0 { (x - 1, y) } else { (0, y.saturating_sub(1)) };
                ny * l + nx
            })
            .collect();
        targets.sort_unstable();
        for &v in &self.list {
            self.slot[v] = 0;
        }
        let mut survivors = Vec::with_capacity(targets.len());
        for run in targets.chunk_by(|a, b| a == b) {
            if run.len() % 2 == 1 {
                survivors.push(run[0]);
            }
        }
        self.list = survivors;
        self.reindex();
        self.step += 1;
    }

    /// Defects present at the start of the step hop in turn; landing on an
    /// occupied vertex annihilates both.
    pub fn step_diffusive<R: Rng>(&mut self, rng: &mut R) {
        let l = self.l as i64;
        for i in 0..self.list.len() {
            let v = self.list[i];
            if v == GONE {
                continue;
            }
            let (x, y) = ((v as i64) % l, (v as i64) / l);
            let (dx, dy) = [(1, 0), (-1, 0), (0, 1), (0, -1)][rng.gen_range(0..4)];
            let w = ((y + dy).rem_euclid(l) * l + (x + dx).rem_euclid(l)) as usize;
            self.slot[v] = 0;
            match self.slot[w] {
                0 => {
                    self.slot[w] = i as u32 + 1;
                    self.list[i] = w;
                }
                k => {
                    self.list[k as usize - 1] = GONE;
                    self.list[i] = GONE;
                    self.slot[w] = 0;
                }
            }
        }
        self.reindex();
        self.step += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrajectoryRow {
    #[serde(rename = "L")]
    pub l: usize,
    pub dynamics: DefectDynamics,
    pub trial: u64,
    pub seed: u64,
    pub initial_defects: usize,
    pub steps_to_clear: u64,
    #[serde(skip)]
    pub lower_bound: u64,
}

/// Step cap per trial, far beyond the expected clearing time of either dynamics.
fn step_cap(l: usize) -> u64 {
    1000 * (l as u64).pow(3) + 1000
}

/// Runs `trials` independent trajectories; row `t` uses the stream `trial_seed(seed, t)`.
pub fn dissipative_prep_mc(l: usize, dynamics: DefectDynamics, trials: u64, seed: u64) -> Result<Vec<TrajectoryRow>> {
    if l < 2 || trials < 1 {
        return contract(format!("need L >= 2 and at least one trial, got L = {l}, trials = {trials}"));
    }
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let mut cfg = DefectConfig::sample(l, &mut rng);
            let initial_defects = cfg.count();
            let lower_bound = cfg.lower_bound();
            run_until_clear(&mut cfg, dynamics, &mut rng)?;
            Ok(TrajectoryRow {
                l,
                dynamics,
                trial,
                seed: trial_seed(seed, trial),
                initial_defects,
                steps_to_clear: cfg.step_count(),
                lower_bound,
            })
        })
        .collect()
}

pub fn run_until_clear<R: Rng>(cfg: &mut DefectConfig, dynamics: DefectDynamics, rng: &mut R) -> Result<()> {
    let cap = step_cap(cfg.l);
    while !cfg.is_clear() {
        if cfg.step >= cap {
            return Err(Error::Budget(format!("{dynamics} dynamics did not clear within {cap} steps")));
        }
        match dynamics {
            DefectDynamics::Sweep => cfg.step_sweep(),
            DefectDynamics::Diffusive => cfg.step_diffusive(rng),
        }
    }
    Ok(())
}
