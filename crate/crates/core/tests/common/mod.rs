//! Dense matrix oracles shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use topobound::algebra::{Pauli, PauliOp};
use topobound::code::StabilizerCode;
use topobound::dynamics::{Gate, GateOp, LocalCircuit};
use topobound::lattice::{Lattice, Region};

pub const TOL: f64 = 1e-12;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Square complex matrix; basis index bit `q` is qubit `q`.
#[derive(Clone, Debug)]
pub struct Mat {
    pub dim: usize,
    pub a: Vec<Complex64>,
}

impl Mat {
    pub fn zeros(dim: usize) -> Self {
        Mat { dim, a: vec![c(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.a[i * dim + i] = c(1.0, 0.0);
        }
        m
    }

    pub fn at(&self, r: usize, col: usize) -> Complex64 {
        self.a[r * self.dim + col]
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        let d = self.dim;
        let mut m = Mat::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let x = self.a[i * d + k];
                if x.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..d {
                    m.a[i * d + j] += x * o.a[k * d + j];
                }
            }
        }
        m
    }

    pub fn adjoint(&self) -> Mat {
        let d = self.dim;
        let mut m = Mat::zeros(d);
        for i in 0..d {
            for j in 0..d {
                m.a[j * d + i] = self.a[i * d + j].conj();
            }
        }
        m
    }

    pub fn scale(&self, s: Complex64) -> Mat {
        Mat { dim: self.dim, a: self.a.iter().map(|x| x * s).collect() }
    }

    pub fn kron(&self, o: &Mat) -> Mat {
        let d = self.dim * o.dim;
        let mut m = Mat::zeros(d);
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..o.dim {
                    for l in 0..o.dim {
                        m.a[(i * o.dim + k) * d + j * o.dim + l] = self.at(i, j) * o.at(k, l);
                    }
                }
            }
        }
        m
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.a[i * self.dim + j] * v[j]).sum()).collect()
    }

    pub fn max_diff(&self, o: &Mat) -> f64 {
        self.a.iter().zip(&o.a).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }
}

pub fn single(p: Pauli) -> Mat {
    let (o, i) = (c(0.0, 0.0), c(1.0, 0.0));
    let a = match p {
        Pauli::I => vec![i, o, o, i],
        Pauli::X => vec![o, i, i, o],
        Pauli::Y => vec![o, c(0.0, -1.0), c(0.0, 1.0), o],
        Pauli::Z => vec![i, o, o, -i],
    };
    Mat { dim: 2, a }
}

/// Kronecker product with qubit `n−1` as the leftmost factor.
pub fn pauli_matrix(p: &PauliOp) -> Mat {
    let n = p.num_qubits();
    let mut m = Mat::identity(1);
    for q in (0..n).rev() {
        m = m.kron(&single(p.get(q)));
    }
    if p.is_negative() {
        m = m.scale(c(-1.0, 0.0));
    }
    m
}

/// Full-register matrix of a gate, built from its action on basis states.
pub fn gate_matrix(op: &GateOp, n: usize) -> Mat {
    let d = 1usize << n;
    let mut m = Mat::zeros(d);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let bit = |b: usize, q: usize| b >> q & 1;
    for b in 0..d {
        let mut put = |row: usize, v: Complex64| m.a[row * d + b] += v;
        let s = &op.sites;
        match op.gate {
            Gate::H => {
                let q = s[0];
                put(b & !(1 << q), c(h, 0.0));
                put(b | (1 << q), c(if bit(b, q) == 1 { -h } else { h }, 0.0));
            }
            Gate::S => put(b, if bit(b, s[0]) == 1 { c(0.0, 1.0) } else { c(1.0, 0.0) }),
            Gate::Sdg => put(b, if bit(b, s[0]) == 1 { c(0.0, -1.0) } else { c(1.0, 0.0) }),
            Gate::T => {
                let w = std::f64::consts::FRAC_PI_4;
                put(b, if bit(b, s[0]) == 1 { c(w.cos(), w.sin()) } else { c(1.0, 0.0) })
            }
            Gate::X => put(b ^ (1 << s[0]), c(1.0, 0.0)),
            Gate::Y => put(b ^ (1 << s[0]), if bit(b, s[0]) == 0 { c(0.0, 1.0) } else { c(0.0, -1.0) }),
            Gate::Z => put(b, c(if bit(b, s[0]) == 1 { -1.0 } else { 1.0 }, 0.0)),
            Gate::Cnot => put(if bit(b, s[0]) == 1 { b ^ (1 << s[1]) } else { b }, c(1.0, 0.0)),
            Gate::Cz => put(b, c(if bit(b, s[0]) & bit(b, s[1]) == 1 { -1.0 } else { 1.0 }, 0.0)),
        }
    }
    m
}

/// `U = L_d ⋯ L_1` for layers applied in order.
pub fn circuit_unitary(circuit: &LocalCircuit) -> Mat {
    let n = circuit.num_qubits();
    let mut u = Mat::identity(1 << n);
    for layer in circuit.layers() {
        for g in layer {
            u = gate_matrix(g, n).mul(&u);
        }
    }
    u
}

pub fn ring(n: usize) -> Lattice {
    Lattice::new(vec![2 * n as i64], (0..n).map(|i| vec![2 * i as i64]).collect()).unwrap()
}

pub fn random_pauli<R: Rng>(n: usize, rng: &mut R) -> PauliOp {
    let mut p = PauliOp::identity(n);
    for q in 0..n {
        p.set(q, [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][rng.gen_range(0..4)]);
    }
    p.with_sign(rng.gen())
}

/// Random Clifford layers on a ring of `n` qubits; two-qubit gates act on neighbours.
pub fn random_circuit<R: Rng>(n: usize, depth: usize, rng: &mut R) -> LocalCircuit {
    let single = [Gate::H, Gate::S, Gate::Sdg, Gate::X, Gate::Y, Gate::Z];
    let mut layers = Vec::new();
    for _ in 0..depth {
        let mut used = vec![false; n];
        let mut layer = Vec::new();
        for q in 0..n {
            if used[q] {
                continue;
            }
            let r = (q + 1) % n;
            if n > 1 && !used[r] && rng.gen_bool(0.5) {
                let gate = if rng.gen_bool(0.5) { Gate::Cnot } else { Gate::Cz };
                let sites = if rng.gen_bool(0.5) { vec![q, r] } else { vec![r, q] };
                used[q] = true;
                used[r] = true;
                layer.push(GateOp::new(gate, sites));
            } else if rng.gen_bool(0.7) {
                used[q] = true;
                layer.push(GateOp::new(single[rng.gen_range(0..single.len())], vec![q]));
            }
        }
        layers.push(layer);
    }
    LocalCircuit::new(layers, &ring(n)).unwrap()
}

/// Exhaustive search for a logical operator supported on `region`.
pub fn brute_force_correctable(code: &StabilizerCode, region: &Region) -> bool {
    let sites = region.to_vec();
    let n = code.n();
    let letters = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    for idx in 1..4usize.pow(sites.len() as u32) {
        let mut p = PauliOp::identity(n);
        let mut rest = idx;
        for &q in &sites {
            p.set(q, letters[rest % 4]);
            rest /= 4;
        }
        if code.commutes_with_all(&p) && !code.in_stabilizer_group(&p) {
            return false;
        }
    }
    true
}

/// `⟨ψ|M|ψ⟩` for a dense vector.
pub fn expectation(m: &Mat, v: &[Complex64]) -> Complex64 {
    v.iter().zip(m.apply(v)).map(|(a, b)| a.conj() * b).sum()
}

/// Projector `(I + s·P)/2` as a matrix.
pub fn projector(p: &PauliOp, s: f64) -> Mat {
    let m = pauli_matrix(p);
    let id = Mat::identity(m.dim);
    Mat { dim: m.dim, a: id.a.iter().zip(&m.a).map(|(i, x)| (i + x * s) * 0.5).collect() }
}

/// Random Clifford layers on `lattice` whose two-qubit gates join sites at
/// distance at most `reach`.
pub fn random_local_circuit<R: Rng>(lattice: &Lattice, depth: usize, reach: i64, rng: &mut R) -> LocalCircuit {
    let n = lattice.num_sites();
    let neighbours: Vec<Vec<usize>> =
        (0..n).map(|q| (0..n).filter(|&r| r != q && lattice.site_distance(q, r) <= reach).collect()).collect();
    let single = [Gate::H, Gate::S, Gate::X, Gate::Z];
    let mut layers = Vec::new();
    for _ in 0..depth {
        let mut used = vec![false; n];
        let mut layer = Vec::new();
        for q in 0..n {
            if used[q] {
                continue;
            }
            let free: Vec<usize> = neighbours[q].iter().copied().filter(|&r| !used[r]).collect();
            if !free.is_empty() && rng.gen_bool(0.6) {
                let r = free[rng.gen_range(0..free.len())];
                used[q] = true;
                used[r] = true;
                let gate = if rng.gen_bool(0.5) { Gate::Cnot } else { Gate::Cz };
                layer.push(GateOp::new(gate, vec![q, r]));
            } else if rng.gen_bool(0.5) {
                used[q] = true;
                layer.push(GateOp::new(single[rng.gen_range(0..single.len())], vec![q]));
            }
        }
        layers.push(layer);
    }
    LocalCircuit::new(layers, lattice).unwrap()
}
