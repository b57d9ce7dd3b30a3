//! Ground spaces, logical measurements, anyon bases and the S-matrix.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::dense::{apply_pauli, apply_projector, check_budget, inner, norm_sqr, DenseState};
use super::distribution::OutcomeDistribution;
use crate::algebra::PauliOp;
use crate::code::StabilizerCode;
use crate::error::{contract, Error, Result};

const GROUND_TOLERANCE: f64 = 1e-8;
const CHECK_TOLERANCE: f64 = 1e-9;

fn project_code_space(code: &StabilizerCode, v: &[Complex64]) -> Vec<Complex64> {
    code.generators().iter().fold(v.to_vec(), |acc, g| apply_projector(g, 1.0, &acc))
}

/// Orthonormal basis of the common +1 eigenspace of the generators.
///
/// Seeds are tried in a fixed order: `|0…0⟩` under every product of logical
/// `X̄` operators, then computational basis states, then seeded random
/// vectors. Each seed is projected and orthogonalized against the basis so far.
pub fn ground_space(code: &StabilizerCode) -> Result<Vec<DenseState>> {
    let n = code.n();
    check_budget(n)?;
    let dim = 1usize << code.k();
    let size = 1usize << n;
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    let try_seed = |seed: Vec<Complex64>, basis: &mut Vec<Vec<Complex64>>| {
        let mut v = project_code_space(code, &seed);
        for _ in 0..2 {
            for b in basis.iter() {
                let c = inner(b, &v);
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= c * y;
                }
            }
        }
        let norm = norm_sqr(&v).sqrt();
        if norm > 1e-6 {
            basis.push(v.into_iter().map(|x| x / norm).collect());
        }
    };
    let unit = |i: usize| {
        let mut v = vec![Complex64::new(0.0, 0.0); size];
        v[i] = Complex64::new(1.0, 0.0);
        v
    };
    let logical_x: Vec<&PauliOp> = code.logical_basis().iter().map(|p| &p.x).collect();
    for mask in 0..dim {
        if basis.len() == dim {
            break;
        }
        let mut seed = unit(0);
        for (i, x) in logical_x.iter().enumerate() {
            if mask >> i & 1 == 1 {
                seed = apply_pauli(x, &seed);
            }
        }
        try_seed(seed, &mut basis);
    }
    for i in 1..size.min(256) {
        if basis.len() == dim {
            break;
        }
        try_seed(unit(i), &mut basis);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..64 {
        if basis.len() == dim {
            break;
        }
        let seed: Vec<Complex64> = (0..size)
            .map(|_| Complex64::new(rand::Rng::gen::<f64>(&mut rng) - 0.5, rand::Rng::gen::<f64>(&mut rng) - 0.5))
            .collect();
        try_seed(seed, &mut basis);
    }
    if basis.len() != dim {
        return Err(Error::Validation(format!("found {} ground states, expected {dim}", basis.len())));
    }
    basis.into_iter().map(|v| DenseState::from_amplitudes(n, v)).collect()
}

/// Whether every generator has expectation `+1` within tolerance.
pub fn in_ground_space(code: &StabilizerCode, state: &DenseState) -> Result<bool> {
    for g in code.generators() {
        if state.expectation(g)? < 1.0 - GROUND_TOLERANCE {
            return Ok(false);
        }
    }
    Ok(true)
}

fn require_ground(code: &StabilizerCode, state: &DenseState) -> Result<()> {
    if !in_ground_space(code, state)? {
        return contract("state is not in the ground space");
    }
    Ok(())
}

/// Joint distribution of commuting Pauli observables. Outcome labels list
/// the eigenvalue signs, e.g. `"+-"`, with `+` before `-` in each position.
pub fn measure_distribution(state: &DenseState, observables: &[PauliOp]) -> Result<OutcomeDistribution> {
    for (i, a) in observables.iter().enumerate() {
        if a.num_qubits() != state.num_qubits() {
            return contract(format!("observable {i} acts on {} qubits", a.num_qubits()));
        }
        for (j, b) in observables.iter().enumerate().skip(i + 1) {
            if a.anticommutes_unchecked(b) {
                return contract(format!("observables {i} and {j} do not commute"));
            }
        }
    }
    let m = observables.len();
    let mut labels = Vec::with_capacity(1 << m);
    let mut probs = Vec::with_capacity(1 << m);
    for outcome in 0..1usize << m {
        let signs: Vec<f64> = (0..m).map(|i| if outcome >> (m - 1 - i) & 1 == 1 { -1.0 } else { 1.0 }).collect();
        let mut v = state.amplitudes().to_vec();
        for (obs, &s) in observables.iter().zip(&signs) {
            v = apply_projector(obs, s, &v);
        }
        labels.push(signs.iter().map(|&s| if s > 0.0 { '+' } else { '-' }).collect());
        probs.push(norm_sqr(&v));
    }
    OutcomeDistribution::new(labels, probs)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Eq5Check {
    pub x_sq: f64,
    pub z_sq: f64,
    pub sum: f64,
}

/// `⟨X̄⟩²`, `⟨Z̄⟩²` and their sum for the first logical pair.
pub fn eq5_check(code: &StabilizerCode, state: &DenseState) -> Result<Eq5Check> {
    require_ground(code, state)?;
    let pair = code.logical_basis().first().ok_or_else(|| Error::Contract("code has no logical qubit".into()))?;
    let x = state.expectation(&pair.x)?;
    let z = state.expectation(&pair.z)?;
    let z_squared = inner(state.amplitudes(), state.apply(&pair.z)?.apply(&pair.z)?.amplitudes()).re;
    if (z_squared - 1.0).abs() > CHECK_TOLERANCE {
        return contract(format!("⟨Z̄²⟩ = {z_squared}"));
    }
    let check = Eq5Check { x_sq: x * x, z_sq: z * z, sum: x * x + z * z };
    if check.sum > 1.0 + CHECK_TOLERANCE {
        return contract(format!("⟨X̄⟩² + ⟨Z̄⟩² = {} exceeds 1", check.sum));
    }
    Ok(check)
}

pub const ANYON_LABELS: [&str; 4] = ["1", "e", "m", "ε"];

/// Label of the joint eigenvalues of a Wilson (Z) loop and a 't Hooft (X) loop.
pub fn anyon_label(z_sign: i8, x_sign: i8) -> &'static str {
    match (z_sign > 0, x_sign > 0) {
        (true, true) => "1",
        (false, true) => "e",
        (true, false) => "m",
        (false, false) => "ε",
    }
}

/// Ground states labelled by anyon sector along one cycle.
#[derive(Clone, Debug)]
pub struct AnyonBasis {
    pub z_loop: PauliOp,
    pub x_loop: PauliOp,
    /// Ordered as [`ANYON_LABELS`].
    pub states: Vec<DenseState>,
}

impl AnyonBasis {
    /// Joint eigenbasis of two commuting loops inside the ground space.
    /// Phases are fixed by making the largest amplitude real and positive.
    pub fn new(ground: &[DenseState], z_loop: PauliOp, x_loop: PauliOp) -> Result<Self> {
        if z_loop.anticommutes_unchecked(&x_loop) {
            return contract("anyon loops must commute");
        }
        let mut states = Vec::with_capacity(4);
        for (zs, xs) in [(1.0, 1.0), (-1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)] {
            let best = ground
                .iter()
                .map(|g| apply_projector(&x_loop, xs, &apply_projector(&z_loop, zs, g.amplitudes())))
                .max_by(|a, b| norm_sqr(a).total_cmp(&norm_sqr(b)))
                .ok_or_else(|| Error::Contract("empty ground space".into()))?;
            let pivot = best
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()).then(b.0.cmp(&a.0)))
                .map(|(_, &c)| c)
                .unwrap_or(Complex64::new(1.0, 0.0));
            let phase = pivot.conj() / pivot.norm();
            let amps = best.into_iter().map(|a| a * phase).collect();
            states.push(DenseState::normalized(ground[0].num_qubits(), amps)?);
        }
        Ok(Self { z_loop, x_loop, states })
    }

    /// Distribution over [`ANYON_LABELS`].
    pub fn measure(&self, state: &DenseState) -> Result<OutcomeDistribution> {
        let joint = measure_distribution(state, &[self.z_loop.clone(), self.x_loop.clone()])?;
        let probs = ["++", "-+", "+-", "--"].iter().map(|l| joint.prob(l).expect("all outcomes listed")).collect();
        OutcomeDistribution::new(ANYON_LABELS.iter().map(|s| s.to_string()).collect(), probs)
    }
}

#[derive(Clone, Debug)]
pub struct SMatrix {
    /// `entries[i][j] = ⟨i|₁ |j⟩₂`.
    pub entries: [[Complex64; 4]; 4],
    pub dir1: AnyonBasis,
    pub dir2: AnyonBasis,
    pub unitarity_error: f64,
    pub max_abs_sq: f64,
    /// `−log₂ max |S_ij|²` in bits.
    pub bound: f64,
}

/// Overlaps between the anyon bases of the two cycle directions of a code
/// with two logical qubits: direction 1 uses `(Z̄₁, X̄₂)`, direction 2
/// uses `(Z̄₂, X̄₁)`.
pub fn s_matrix_numeric(code: &StabilizerCode) -> Result<SMatrix> {
    if code.k() != 2 {
        return contract(format!("anyon bases need k = 2, got k = {}", code.k()));
    }
    let ground = ground_space(code)?;
    let basis = code.logical_basis();
    let dir1 = AnyonBasis::new(&ground, basis[0].z.clone(), basis[1].x.clone())?;
    let dir2 = AnyonBasis::new(&ground, basis[1].z.clone(), basis[0].x.clone())?;
    let mut entries = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (i, a) in dir1.states.iter().enumerate() {
        for (j, b) in dir2.states.iter().enumerate() {
            entries[i][j] = a.inner(b);
        }
    }
    let mut unitarity_error: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let s: Complex64 = (0..4).map(|k| entries[i][k] * entries[j][k].conj()).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            unitarity_error = unitarity_error.max((s - target).norm());
        }
    }
    let max_abs_sq = entries.iter().flatten().map(Complex64::norm_sqr).fold(0.0, f64::max);
    if unitarity_error > GROUND_TOLERANCE {
        return contract(format!("S-matrix deviates from unitarity by {unitarity_error}"));
    }
    if (max_abs_sq - 0.25).abs() > GROUND_TOLERANCE {
        return contract(format!("max |S_ij|² = {max_abs_sq}, expected 1/4"));
    }
    Ok(SMatrix { entries, dir1, dir2, unitarity_error, max_abs_sq, bound: -max_abs_sq.log2() })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MaassenUffink {
    pub h1: f64,
    pub h2: f64,
    pub bound: f64,
}

/// Anyon-label entropies along both cycles and the S-matrix bound.
pub fn maassen_uffink_check(code: &StabilizerCode, s: &SMatrix, state: &DenseState) -> Result<MaassenUffink> {
    require_ground(code, state)?;
    let h1 = s.dir1.measure(state)?.entropy();
    let h2 = s.dir2.measure(state)?.entropy();
    if h1 + h2 < s.bound - CHECK_TOLERANCE {
        return contract(format!("H1 + H2 = {} is below the bound {}", h1 + h2, s.bound));
    }
    Ok(MaassenUffink { h1, h2, bound: s.bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{build_toric_2d, Toric2dLayout};

    #[test]
    fn toric_l2_ground_space() {
        let code = build_toric_2d(2).unwrap();
        let ground = ground_space(&code).unwrap();
        assert_eq!(ground.len(), 4);
        for (i, a) in ground.iter().enumerate() {
            for g in code.generators() {
                assert!((a.expectation(g).unwrap() - 1.0).abs() < 1e-9);
            }
            for (j, b) in ground.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((a.inner(b) - expected).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn toric_l3_ground_space() {
        let code = build_toric_2d(3).unwrap();
        let ground = ground_space(&code).unwrap();
        assert_eq!(ground.len(), 4);
        assert!(ground.iter().all(|g| in_ground_space(&code, g).unwrap()));
    }

    #[test]
    fn z_eigenstate_is_deterministic() {
        let code = build_toric_2d(2).unwrap();
        let ground = ground_space(&code).unwrap();
        // the first seed is Π|0…0⟩, a +1 eigenstate of every Z̄
        let z1 = &code.logical_basis()[0].z;
        let d = measure_distribution(&ground[0], std::slice::from_ref(z1)).unwrap();
        assert!(d.entropy() < 1e-12);
        let e = eq5_check(&code, &ground[0]).unwrap();
        assert!((e.z_sq - 1.0).abs() < 1e-12 && e.x_sq.abs() < 1e-12);
    }

    #[test]
    fn x_eigenstate_gives_one_bit() {
        let code = build_toric_2d(2).unwrap();
        let ground = ground_space(&code).unwrap();
        let x1 = &code.logical_basis()[0].x;
        let plus = DenseState::combination(
            &ground,
            &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
        )
        .unwrap();
        let v: Vec<Complex64> =
            plus.amplitudes().iter().zip(plus.apply(x1).unwrap().amplitudes()).map(|(a, b)| a + b).collect();
        let plus = DenseState::normalized(code.n(), v).unwrap();
        let d = measure_distribution(&plus, &[code.logical_basis()[0].z.clone()]).unwrap();
        assert!((d.entropy() - 1.0).abs() < 1e-12);
        let e = eq5_check(&code, &plus).unwrap();
        assert!((e.x_sq - 1.0).abs() < 1e-12);
    }

    #[test]
    fn noncommuting_observables_rejected() {
        let code = build_toric_2d(2).unwrap();
        let ground = ground_space(&code).unwrap();
        let b = code.logical_basis();
        assert!(measure_distribution(&ground[0], &[b[0].x.clone(), b[0].z.clone()]).is_err());
    }

    #[test]
    fn non_ground_state_rejected() {
        let code = build_toric_2d(2).unwrap();
        let s = DenseState::basis(code.n(), 1).unwrap();
        assert!(eq5_check(&code, &s).is_err());
    }

    #[test]
    fn s_matrix_has_flat_modulus() {
        let code = build_toric_2d(2).unwrap();
        let s = s_matrix_numeric(&code).unwrap();
        for row in &s.entries {
            for e in row {
                assert!((e.norm() - 0.5).abs() < 1e-8);
            }
        }
        assert!((s.bound - 2.0).abs() < 1e-8);
    }

    #[test]
    fn s_matrix_matches_character_table() {
        // |S_ij| = 1/2 and the sign pattern of the Z2 × Z2 character table
        // appears after fixing row and column phases by the first entries.
        let code = build_toric_2d(2).unwrap();
        let s = s_matrix_numeric(&code).unwrap();
        let e = s.entries;
        let mut normalized = [[0.0f64; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let v = e[i][j] * e[0][0] / (e[i][0] * e[0][j]);
                assert!(v.im.abs() < 1e-8);
                normalized[i][j] = v.re.round();
            }
        }
        let signs: Vec<i32> = normalized.iter().flatten().map(|&x| x as i32).collect();
        // rows and columns indexed 1, e, m, ε: entry (−1)^{a·b'+b·a'} up to relabelling
        assert_eq!(signs.iter().filter(|&&x| x == -1).count(), 6);
        assert!(signs.iter().all(|&x| x == 1 || x == -1));
    }

    #[test]
    fn anyon_state_saturates_bound() {
        let code = build_toric_2d(2).unwrap();
        let s = s_matrix_numeric(&code).unwrap();
        for state in &s.dir1.states {
            let mu = maassen_uffink_check(&code, &s, state).unwrap();
            assert!(mu.h1.abs() < 1e-9);
            assert!((mu.h1 + mu.h2 - 2.0).abs() < 1e-6);
        }
    }

    #[test]
    fn strip_translates_perfectly_correlated() {
        let code = build_toric_2d(2).unwrap();
        let t = Toric2dLayout::new(2);
        let ground = ground_space(&code).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let psi = DenseState::random_in_span(&ground, &mut rng).unwrap();
            let joint = measure_distribution(&psi, &[t.vertical_z_loop(0), t.vertical_z_loop(1)]).unwrap();
            assert!(joint.prob("+-").unwrap() < 1e-9 && joint.prob("-+").unwrap() < 1e-9);
        }
    }
}
