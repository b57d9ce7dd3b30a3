//! Toric code builders.

use super::{LogicalPair, StabilizerCode};
use crate::algebra::{symplectic_matrix, PauliOp, RowSpace};
use crate::error::{contract, Result};
use crate::lattice::Lattice;

/// Edge indexing of the `L×L` torus.
///
/// Horizontal edge `h(i,j)` joins vertices `(i,j)` and `(i+1,j)` and sits at
/// doubled coordinate `(2i+1, 2j)`; vertical edge `v(i,j)` joins `(i,j)` and
/// `(i,j+1)` and sits at `(2i, 2j+1)`. Indices are taken modulo `L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Toric2dLayout {
    pub l: usize,
}

impl Toric2dLayout {
    pub fn new(l: usize) -> Self {
        Self { l }
    }

    pub fn num_qubits(&self) -> usize {
        2 * self.l * self.l
    }

    fn wrap(&self, a: i64) -> usize {
        a.rem_euclid(self.l as i64) as usize
    }

    pub fn h(&self, i: i64, j: i64) -> usize {
        self.wrap(j) * self.l + self.wrap(i)
    }

    pub fn v(&self, i: i64, j: i64) -> usize {
        self.l * self.l + self.wrap(j) * self.l + self.wrap(i)
    }

    /// The four edges incident to vertex `(i,j)`.
    pub fn star(&self, i: i64, j: i64) -> [usize; 4] {
        [self.h(i, j), self.h(i - 1, j), self.v(i, j), self.v(i, j - 1)]
    }

    /// The four edges bounding the face with lower-left vertex `(i,j)`.
    pub fn plaquette(&self, i: i64, j: i64) -> [usize; 4] {
        [self.h(i, j), self.h(i, j + 1), self.v(i, j), self.v(i + 1, j)]
    }

    /// Z string along the vertical cycle through column `i`.
    pub fn vertical_z_loop(&self, i: i64) -> PauliOp {
        PauliOp::z_on(self.num_qubits(), (0..self.l as i64).map(|j| self.v(i, j)))
    }

    /// Z string along the horizontal cycle through row `j`.
    pub fn horizontal_z_loop(&self, j: i64) -> PauliOp {
        PauliOp::z_on(self.num_qubits(), (0..self.l as i64).map(|i| self.h(i, j)))
    }

    /// X string on the vertical edges of row `j` (a horizontal dual cycle).
    pub fn horizontal_x_loop(&self, j: i64) -> PauliOp {
        PauliOp::x_on(self.num_qubits(), (0..self.l as i64).map(|i| self.v(i, j)))
    }

    /// X string on the horizontal edges of column `i` (a vertical dual cycle).
    pub fn vertical_x_loop(&self, i: i64) -> PauliOp {
        PauliOp::x_on(self.num_qubits(), (0..self.l as i64).map(|j| self.h(i, j)))
    }

    pub fn lattice(&self) -> Lattice {
        let l = self.l as i64;
        let mut coords = Vec::with_capacity(self.num_qubits());
        for j in 0..l {
            for i in 0..l {
                coords.push(vec![2 * i + 1, 2 * j]);
            }
        }
        for j in 0..l {
            for i in 0..l {
                coords.push(vec![2 * i, 2 * j + 1]);
            }
        }
        Lattice::new(vec![2 * l, 2 * l], coords).expect("valid toric lattice")
    }
}

/// Kitaev's toric code on the `L×L` torus: `2L²` edge qubits, vertex
/// X-stars and face Z-plaquettes with the ones at the origin dropped.
///
/// Logical pair 1 is `(X on row-0 vertical edges, Z on the column-0 vertical
/// cycle)`; pair 2 is `(X on column-0 horizontal edges, Z on the row-0
/// horizontal cycle)`.
pub fn build_toric_2d(l: usize) -> Result<StabilizerCode> {
    if l < 2 {
        return contract(format!("toric code needs L >= 2, got {l}"));
    }
    let t = Toric2dLayout::new(l);
    let n = t.num_qubits();
    let li = l as i64;
    let mut generators = Vec::with_capacity(2 * l * l - 2);
    for j in 0..li {
        for i in 0..li {
            if (i, j) != (0, 0) {
                generators.push(PauliOp::x_on(n, t.star(i, j)));
            }
        }
    }
    for j in 0..li {
        for i in 0..li {
            if (i, j) != (0, 0) {
                generators.push(PauliOp::z_on(n, t.plaquette(i, j)));
            }
        }
    }
    let logicals = vec![
        LogicalPair { x: t.horizontal_x_loop(0), z: t.vertical_z_loop(0) },
        LogicalPair { x: t.vertical_x_loop(0), z: t.horizontal_z_loop(0) },
    ];
    StabilizerCode::new(format!("toric2d-L{l}"), generators, t.lattice(), Some(logicals))
}

/// Toric code on the `L×L×L` cubic torus with qubits on edges.
///
/// Edge `(a, v)` points along axis `a` from vertex `v` and has index
/// `a·L³ + (v₂·L + v₁)·L + v₀`. Vertex X-stars have weight 6 (origin dropped);
/// face Z-plaquettes have weight 4 and an independent subset is kept in a
/// fixed scan order. Logical `Z̄_a` is the axis-`a` line through the origin
/// (weight `L`); `X̄_a` is the sheet of axis-`a` edges with `v_a = 0`
/// (weight `L²`).
pub fn build_toric_3d(l: usize) -> Result<StabilizerCode> {
    if l < 2 {
        return contract(format!("toric code needs L >= 2, got {l}"));
    }
    let li = l as i64;
    let n = 3 * l * l * l;
    let wrap = |a: i64| a.rem_euclid(li) as usize;
    let edge = |axis: usize, v: [i64; 3]| axis * l * l * l + (wrap(v[2]) * l + wrap(v[1])) * l + wrap(v[0]);
    let shift = |v: [i64; 3], axis: usize, d: i64| {
        let mut w = v;
        w[axis] += d;
        w
    };
    let mut vertices = Vec::with_capacity(l * l * l);
    for z in 0..li {
        for y in 0..li {
            for x in 0..li {
                vertices.push([x, y, z]);
            }
        }
    }

    let mut generators = Vec::new();
    for &v in vertices.iter().skip(1) {
        let sites: Vec<usize> = (0..3).flat_map(|a| [edge(a, v), edge(a, shift(v, a, -1))]).collect();
        generators.push(PauliOp::x_on(n, sites));
    }
    let mut span = RowSpace::new(&symplectic_matrix(&[], n));
    for &v in &vertices {
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            let face = PauliOp::z_on(n, [edge(a, v), edge(a, shift(v, b, 1)), edge(b, v), edge(b, shift(v, a, 1))]);
            if span.insert(&face.symplectic()) {
                generators.push(face);
            }
        }
    }

    let mut coords = vec![Vec::new(); n];
    for a in 0..3 {
        for &v in &vertices {
            let mut c: Vec<i64> = v.iter().map(|x| 2 * x).collect();
            c[a] += 1;
            coords[edge(a, v)] = c;
        }
    }
    let lattice = Lattice::new(vec![2 * li; 3], coords)?;

    let logicals = (0..3)
        .map(|a| {
            let line = (0..li).map(|t| {
                let mut v = [0i64; 3];
                v[a] = t;
                edge(a, v)
            });
            let sheet = vertices.iter().filter(|v| v[a] == 0).map(|&v| edge(a, v));
            LogicalPair { x: PauliOp::x_on(n, sheet), z: PauliOp::z_on(n, line) }
        })
        .collect();
    StabilizerCode::new(format!("toric3d-L{l}"), generators, lattice, Some(logicals))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pairs_commute(code: &StabilizerCode) -> bool {
        let g = code.generators();
        g.iter().enumerate().all(|(i, a)| g[i + 1..].iter().all(|b| a.commutes_with(b).unwrap()))
    }

    #[test]
    fn toric_2d_small_sizes() {
        let c2 = build_toric_2d(2).unwrap();
        assert_eq!((c2.n(), c2.k(), c2.generators().len()), (8, 2, 6));
        assert!(all_pairs_commute(&c2));

        let c3 = build_toric_2d(3).unwrap();
        assert_eq!(c3.n(), 18);
        assert!(c3.generators().iter().all(|g| g.weight() == 4));
        assert_eq!(c3.xi(), 2);
    }

    #[test]
    fn toric_2d_logical_relations() {
        let c = build_toric_2d(3).unwrap();
        let b = c.logical_basis();
        assert!(!b[0].z.commutes_with(&b[0].x).unwrap());
        assert!(b[0].z.commutes_with(&b[1].z).unwrap());
        assert!(b[0].z.commutes_with(&b[1].x).unwrap());
        assert!(!b[1].z.commutes_with(&b[1].x).unwrap());
    }

    #[test]
    fn toric_2d_rejects_tiny_lattice() {
        assert!(build_toric_2d(1).is_err());
        assert!(build_toric_3d(1).is_err());
    }

    #[test]
    fn toric_2d_translation_symmetry() {
        for l in [3usize, 4] {
            let code = build_toric_2d(l).unwrap();
            let t = Toric2dLayout::new(l);
            let li = l as i64;
            // full generator set including the two dropped ones
            let mut full: Vec<Vec<usize>> = Vec::new();
            for j in 0..li {
                for i in 0..li {
                    let mut s = t.star(i, j).to_vec();
                    s.sort();
                    full.push(s);
                    let mut p = t.plaquette(i, j).to_vec();
                    p.sort();
                    full.push(p);
                }
            }
            let translate = |q: usize, dx: i64, dy: i64| -> usize {
                if q < l * l {
                    t.h((q % l) as i64 + dx, (q / l) as i64 + dy)
                } else {
                    let r = q - l * l;
                    t.v((r % l) as i64 + dx, (r / l) as i64 + dy)
                }
            };
            for g in code.generators() {
                for (dx, dy) in [(1, 0), (0, 1)] {
                    let mut moved: Vec<usize> = g.support().into_iter().map(|q| translate(q, dx, dy)).collect();
                    moved.sort();
                    assert!(full.contains(&moved), "translate of {g} missing");
                }
            }
        }
    }

    #[test]
    fn toric_3d_structure() {
        for l in [2usize, 3] {
            let c = build_toric_3d(l).unwrap();
            assert_eq!(c.n(), 3 * l * l * l);
            assert_eq!(c.k(), 3);
            assert_eq!(c.generator_matrix().rank(), c.n() - 3);
            assert!(all_pairs_commute(&c));
            for pair in c.logical_basis() {
                assert_eq!(pair.z.weight(), l);
                assert_eq!(pair.x.weight(), l * l);
            }
            assert!(c.generators().iter().filter(|g| g.is_x_type()).all(|g| g.weight() == 6));
            assert!(c.generators().iter().filter(|g| g.is_z_type()).all(|g| g.weight() == 4));
        }
    }
}
