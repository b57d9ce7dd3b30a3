//! Correctable regions, operator cleaning and the cube sweep.

use serde::Serialize;

use crate::algebra::{BitVec, PauliOp};
use crate::code::{CodeDistanceCertificate, StabilizerCode};
use crate::error::{contract, Error, Result};
use crate::lattice::Region;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CleaningResult {
    pub original: PauliOp,
    pub cleaned: PauliOp,
    /// Generator coefficients of the stabilizer multiplied onto `original`.
    pub stabilizer_certificate: BitVec,
}

/// `x ‖ z` columns of the generator matrix belonging to `sites`.
fn columns(n: usize, sites: &[usize]) -> Vec<usize> {
    sites.iter().copied().chain(sites.iter().map(|&q| q + n)).collect()
}

fn check_region(code: &StabilizerCode, region: &Region) -> Result<()> {
    if let Some(bad) = region.iter().find(|&q| q >= code.n()) {
        return contract(format!("site {bad} outside a code of {} qubits", code.n()));
    }
    Ok(())
}

/// True iff no logical operator is supported inside `region`.
///
/// Operators on Γ commuting with every generator form a space of dimension
/// `2|Γ| − rank(G_Γ)`; stabilizers supported on Γ form one of dimension
/// `m − rank(G_{Γᶜ})`. Γ is correctable exactly when the two coincide.
pub fn is_correctable(code: &StabilizerCode, region: &Region) -> Result<bool> {
    check_region(code, region)?;
    let n = code.n();
    let g = code.generator_matrix();
    let inside = region.to_vec();
    let outside = region.complement(n).to_vec();
    let centralizer_on_region = 2 * inside.len() - g.select_columns(&columns(n, &inside)).rank();
    let stabilizers_on_region = code.generators().len() - g.select_columns(&columns(n, &outside)).rank();
    Ok(centralizer_on_region == stabilizers_on_region)
}

/// Multiplies `p` by a stabilizer so that the result acts trivially on `region`.
pub fn clean(code: &StabilizerCode, p: &PauliOp, region: &Region) -> Result<CleaningResult> {
    check_region(code, region)?;
    if !code.commutes_with_all(p) {
        return contract(format!("{p} does not commute with every generator"));
    }
    let n = code.n();
    let cols = columns(n, &region.to_vec());
    let system = code.generator_matrix().select_columns(&cols).transpose();
    let target = p.symplectic().select(&cols);
    let Some(coefficients) = system.solve(&target)? else {
        let correctable = is_correctable(code, region)?;
        let reason = if correctable {
            format!("no stabilizer cleans {p} off a region certified correctable")
        } else {
            format!("every representative of {p} meets the region")
        };
        return Err(Error::CleaningObstruction { reason, internal_inconsistency: correctable });
    };
    let cleaned = p.multiply_unchecked(&code.stabilizer_element(&coefficients));
    Ok(CleaningResult { original: p.clone(), cleaned, stabilizer_certificate: coefficients })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub r: i64,
    pub all_correctable: bool,
    pub num_cubes_tested: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lemma1Sweep {
    pub rows: Vec<SweepRow>,
    /// Largest `R` at which every cube is correctable (0 if none).
    pub r_star: i64,
    pub d: usize,
    pub xi: i64,
    /// `R* / d^{1/(D−1)}`; absent in one dimension.
    pub ratio: Option<f64>,
}

/// Tests every cube `Γ_R(v)` for `R = 1..=` the largest cell count per axis.
pub fn lemma1_sweep(code: &StabilizerCode, distance: &CodeDistanceCertificate) -> Result<Lemma1Sweep> {
    let lattice = code.lattice();
    let cells = lattice.all_cells();
    let max_r = lattice.cells_per_axis().into_iter().max().unwrap_or(1);
    let mut rows = Vec::new();
    for r in 1..=max_r {
        let mut all = true;
        for v in &cells {
            if !is_correctable(code, &lattice.cube(v, r)?)? {
                all = false;
                break;
            }
        }
        rows.push(SweepRow { r, all_correctable: all, num_cubes_tested: cells.len() });
    }
    let r_star = rows.iter().take_while(|row| row.all_correctable).map(|row| row.r).last().unwrap_or(0);
    let dim = lattice.dim();
    let ratio = (dim >= 2).then(|| r_star as f64 / (distance.d as f64).powf(1.0 / (dim as f64 - 1.0)));
    Ok(Lemma1Sweep { rows, r_star, d: distance.d, xi: code.xi(), ratio })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Theorem1Regions {
    pub gamma: Region,
    pub b: Region,
    pub p_bar_b: PauliOp,
    pub cube_center: Vec<i64>,
    pub cube_size: i64,
    /// `d(B, A)` in doubled coordinates.
    pub d_ba: i64,
}

/// Picks the largest correctable cube around `a`, takes `B` as its
/// complement and cleans the first logical `X̄` out of the cube.
///
/// Candidate centers are the cells of `a`'s sites; among cubes of the largest
/// admissible size the one farthest from `B` wins, ties going to the first.
pub fn construct_theorem1_regions(code: &StabilizerCode, a: &Region) -> Result<Theorem1Regions> {
    check_region(code, a)?;
    if a.is_empty() || code.k() == 0 {
        return contract("the experiment needs a nonempty A and a code with k >= 1");
    }
    let lattice = code.lattice();
    let mut centers: Vec<Vec<i64>> = a.iter().map(|q| lattice.cell_of(q)).collect();
    centers.dedup();
    let max_r = lattice.cells_per_axis().into_iter().max().unwrap_or(1);
    for r in (1..=max_r).rev() {
        let mut best: Option<(i64, Vec<i64>, Region)> = None;
        for v in &centers {
            let gamma = lattice.cube(v, r)?;
            if gamma.len() == code.n() || !a.is_subset(&gamma) || gamma.len() == a.len() {
                continue;
            }
            if !is_correctable(code, &gamma)? {
                continue;
            }
            let b = gamma.complement(code.n());
            let d = lattice.region_distance(&b, a)?;
            if best.as_ref().is_none_or(|(bd, _, _)| d > *bd) {
                best = Some((d, v.clone(), gamma));
            }
        }
        if let Some((d_ba, cube_center, gamma)) = best {
            let b = gamma.complement(code.n());
            let logical = &code.logical_basis()[0].x;
            let p_bar_b = clean(code, logical, &gamma)?.cleaned;
            return Ok(Theorem1Regions { gamma, b, p_bar_b, cube_center, cube_size: r, d_ba });
        }
    }
    Err(Error::Setup(format!("no correctable cube strictly contains A = {{{a}}}; the code is too small")))
}
