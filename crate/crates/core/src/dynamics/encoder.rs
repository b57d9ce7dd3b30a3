//! Staircase encoder for the 2D toric code.

use crate::code::Toric2dLayout;
use crate::error::{contract, Result};
use crate::lattice::Region;

use super::circuit::{CircuitBuilder, Gate, LocalCircuit};

/// Encoder with its two input qubits.
#[derive(Clone, Debug)]
pub struct ToricEncoder {
    pub circuit: LocalCircuit,
    /// Input carrying logical qubit 1 (`X_a1 ↦ X̄₁`).
    pub a1: usize,
    /// Input carrying logical qubit 2 (`X_a2 ↦ X̄₂`).
    pub a2: usize,
    pub origin: (i64, i64),
}

impl ToricEncoder {
    pub fn inputs(&self) -> Region {
        Region::new([self.a1, self.a2])
    }
}

pub fn encoder_toric_2d(l: usize) -> Result<ToricEncoder> {
    encoder_toric_2d_at(l, (0, 0))
}

/// Maps `|ψ⟩_{a1,a2} ⊗ |0…0⟩` onto the toric code space, with inputs
/// `a1 = v(o)` and `a2 = h(o)` at vertex `o = origin`.
///
/// 1. `a1` is fanned out by nearest-neighbour CNOT chains along the row of
///    vertical edges through `o`, `a2` along the column of horizontal edges.
/// 2. Cutting the torus along those two dual loops leaves an open `L×L`
///    grid of vertices rooted at `o`. Every other vertex takes the edge to
///    its parent (toward `o`, first along `x`, then along `y`) as pivot.
/// 3. Vertices are processed in decreasing tree depth: `H` on the pivot,
///    then CNOTs from the pivot onto the remaining star edges.
pub fn encoder_toric_2d_at(l: usize, origin: (i64, i64)) -> Result<ToricEncoder> {
    if l < 2 {
        return contract(format!("toric encoder needs L >= 2, got {l}"));
    }
    let t = Toric2dLayout::new(l);
    let li = l as i64;
    let (ox, oy) = (origin.0.rem_euclid(li), origin.1.rem_euclid(li));
    let mut b = CircuitBuilder::new(t.num_qubits());

    let a1 = t.v(ox, oy);
    let a2 = t.h(ox, oy);
    let forward = li / 2;
    let backward = li - 1 - forward;
    for (edge, dir) in [(0, 1), (0, -1), (1, 1), (1, -1)] {
        let steps = if dir == 1 { forward } else { backward };
        for s in 0..steps {
            let (from, to) = if edge == 0 {
                (t.v(ox + dir * s, oy), t.v(ox + dir * (s + 1), oy))
            } else {
                (t.h(ox, oy + dir * s), t.h(ox, oy + dir * (s + 1)))
            };
            b.push(Gate::Cnot, &[from, to]);
        }
    }

    // grid position of vertex (i, j): px = (i − ox − 1) mod L, root at (L−1, L−1)
    let mut order: Vec<(i64, i64, i64)> = Vec::new();
    for py in 0..li {
        for px in 0..li {
            if (px, py) != (li - 1, li - 1) {
                order.push(((li - 1 - px) + (li - 1 - py), px, py));
            }
        }
    }
    order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    for &(_, px, py) in &order {
        let (i, j) = (ox + 1 + px, oy + 1 + py);
        let pivot = if px < li - 1 { t.h(i, j) } else { t.v(i, j) };
        b.push(Gate::H, &[pivot]);
        for e in t.star(i, j) {
            if e != pivot {
                b.push(Gate::Cnot, &[pivot, e]);
            }
        }
    }
    let circuit = b.build(&t.lattice())?;
    Ok(ToricEncoder { circuit, a1, a2, origin: (ox, oy) })
}
