//! Row-major GF(2) matrices and Gauss–Jordan elimination.

use super::bits::BitVec;
use crate::error::{contract, Result};

/// A dense matrix over GF(2) stored as packed rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    rows: Vec<BitVec>,
    cols: usize,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows: vec![BitVec::zeros(cols); rows], cols }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].set(i, true);
        }
        m
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(rows: Vec<BitVec>, cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return contract(format!("row {bad} has length {} but matrix has {cols} columns", rows[bad].len()));
        }
        Ok(Self { rows, cols })
    }

    pub fn from_dense(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let rows = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged dense matrix");
                BitVec::from_bools(&r.iter().map(|&b| b & 1 == 1).collect::<Vec<_>>())
            })
            .collect();
        Self { rows, cols }
    }

    #[inline]
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn push_row(&mut self, row: BitVec) -> Result<()> {
        if row.len() != self.cols {
            return contract(format!("row length {} != {} columns", row.len(), self.cols));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    /// Columns restricted to `cols`, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> BitMatrix {
        BitMatrix { rows: self.rows.iter().map(|r| r.select(cols)).collect(), cols: cols.len() }
    }

    /// `M · x` over GF(2).
    pub fn mul_vec(&self, x: &BitVec) -> Result<BitVec> {
        if x.len() != self.cols {
            return contract(format!("vector length {} != {} columns", x.len(), self.cols));
        }
        Ok(BitVec::from_bools(&self.rows.iter().map(|r| r.dot(x)).collect::<Vec<_>>()))
    }

    /// Reduced row-echelon form and pivot columns. Pivots are chosen leftmost
    /// column first, topmost candidate row first; zero rows sink to the bottom.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == self.rows.len() {
                break;
            }
            let Some(p) = (next..self.rows.len()).find(|&r| self.rows[r].get(c)) else {
                continue;
            };
            self.rows.swap(next, p);
            let pivot_row = self.rows[next].clone();
            for (r, row) in self.rows.iter_mut().enumerate() {
                if r != next && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Some `x` with `M · x = b`, or `None` when the system is inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, b: &BitVec) -> Result<Option<BitVec>> {
        if b.len() != self.rows.len() {
            return contract(format!("right-hand side has length {} but matrix has {} rows", b.len(), self.rows.len()));
        }
        let cols = self.cols;
        let aug_rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.concat(&BitVec::zeros(1));
                row.set(cols, b.get(i));
                row
            })
            .collect();
        let mut aug = BitMatrix { rows: aug_rows, cols: cols + 1 };
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&cols) {
            return Ok(None);
        }
        let mut x = BitVec::zeros(cols);
        for (r, &c) in pivots.iter().enumerate() {
            x.set(c, aug.rows[r].get(cols));
        }
        Ok(Some(x))
    }

    /// A basis of `{ x : M · x = 0 }`.
    pub fn nullspace(&self) -> Vec<BitVec> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVec::zeros(self.cols);
                v.set(f, true);
                for (i, &p) in pivots.iter().enumerate() {
                    if r.rows[i].get(f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }
}

/// Reduced basis of a row space supporting fast membership queries.
#[derive(Clone, Debug)]
pub struct RowSpace {
    basis: Vec<BitVec>,
    pivots: Vec<usize>,
    cols: usize,
}

impl RowSpace {
    pub fn new(m: &BitMatrix) -> Self {
        let (r, pivots) = m.rref();
        let basis = r.rows[..pivots.len()].to_vec();
        Self { basis, pivots, cols: m.cols }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Residual of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut out = v.clone();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out.get(p) {
                out.xor_assign(row);
            }
        }
        out
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the space; returns false when it was already contained.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.first_one() else {
            return false;
        };
        for row in self.basis.iter_mut() {
            if row.get(p) {
                row.xor_assign(&r);
            }
        }
        self.basis.push(r);
        self.pivots.push(p);
        true
    }
}
