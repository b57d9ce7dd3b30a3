//! Periodic lattice geometry.
//!
//! Qubits carry integer coordinates in the doubled convention: vertices sit at
//! even tuples, edge midpoints at mixed tuples, face centers at odd tuples.
//! `extent[a]` is the doubled period of axis `a`, so an `L×L` torus has
//! extent `[2L, 2L]`. The metric is L∞ on this doubled torus.
//!
//! Cubes are measured in cells: the cell of a qubit is `coord / 2` per axis,
//! so a cube of linear size `R` holds every qubit whose cell lies in an
//! `R×…×R` block. For even `R` the center cell is the lower-left corner of the
//! central `2×…×2` block.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{contract, Error, Result};

pub const METRIC_TAG: &str = "torus-linf-doubled";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    extent: Vec<i64>,
    coords: Vec<Vec<i64>>,
}

/// A set of qubit indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Region {
    sites: BTreeSet<usize>,
}

impl Region {
    pub fn new(sites: impl IntoIterator<Item = usize>) -> Self {
        Self { sites: sites.into_iter().collect() }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn contains(&self, site: usize) -> bool {
        self.sites.contains(&site)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.sites.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.sites.iter().copied().collect()
    }

    pub fn insert(&mut self, site: usize) {
        self.sites.insert(site);
    }

    pub fn is_subset(&self, other: &Region) -> bool {
        self.sites.is_subset(&other.sites)
    }

    pub fn intersects(&self, other: &Region) -> bool {
        !self.sites.is_disjoint(&other.sites)
    }

    pub fn union(&self, other: &Region) -> Region {
        Region { sites: self.sites.union(&other.sites).copied().collect() }
    }

    pub fn intersection(&self, other: &Region) -> Region {
        Region { sites: self.sites.intersection(&other.sites).copied().collect() }
    }

    /// Sites of `0..n` not in `self`.
    pub fn complement(&self, n: usize) -> Region {
        Region { sites: (0..n).filter(|s| !self.sites.contains(s)).collect() }
    }
}

impl FromIterator<usize> for Region {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Region::new(iter)
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sites.iter().map(usize::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Region {
    type Err = Error;

    /// Comma-separated qubit indices, e.g. `"0,1,5"`. The empty string is the empty region.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Region::empty());
        }
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("bad site {t:?}: {e}"))))
            .collect()
    }
}

impl Lattice {
    /// `extent` is the doubled period per axis; coordinates are reduced modulo it.
    pub fn new(extent: Vec<i64>, coords: Vec<Vec<i64>>) -> Result<Self> {
        if extent.is_empty() || extent.iter().any(|&e| e < 1) {
            return Err(Error::Validation(format!("invalid extent {extent:?}")));
        }
        let dim = extent.len();
        let mut reduced = Vec::with_capacity(coords.len());
        for (q, c) in coords.into_iter().enumerate() {
            if c.len() != dim {
                return Err(Error::Validation(format!(
                    "qubit {q} has {} coordinates, lattice has dimension {dim}",
                    c.len()
                )));
            }
            reduced.push(c.iter().zip(&extent).map(|(&x, &e)| x.rem_euclid(e)).collect());
        }
        Ok(Self { extent, coords: reduced })
    }

    pub fn dim(&self) -> usize {
        self.extent.len()
    }

    pub fn extent(&self) -> &[i64] {
        &self.extent
    }

    pub fn num_sites(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self, site: usize) -> &[i64] {
        &self.coords[site]
    }

    pub fn all_coords(&self) -> &[Vec<i64>] {
        &self.coords
    }

    pub fn all_sites(&self) -> Region {
        Region::new(0..self.num_sites())
    }

    /// Number of cells along each axis.
    pub fn cells_per_axis(&self) -> Vec<i64> {
        self.extent.iter().map(|e| (e + 1) / 2).collect()
    }

    pub fn cell_of(&self, site: usize) -> Vec<i64> {
        self.coords[site].iter().map(|c| c / 2).collect()
    }

    /// Largest possible site distance (half the largest doubled period).
    pub fn diameter(&self) -> i64 {
        self.extent.iter().map(|e| e / 2).max().unwrap_or(0)
    }

    #[inline]
    fn axis_distance(a: i64, b: i64, extent: i64) -> i64 {
        let d = (a - b).rem_euclid(extent);
        d.min(extent - d)
    }

    /// Torus L∞ distance between coordinate tuples.
    pub fn point_distance(&self, a: &[i64], b: &[i64]) -> i64 {
        a.iter().zip(b).zip(&self.extent).map(|((&x, &y), &e)| Self::axis_distance(x, y, e)).max().unwrap_or(0)
    }

    pub fn site_distance(&self, a: usize, b: usize) -> i64 {
        self.point_distance(&self.coords[a], &self.coords[b])
    }

    /// `min_{b ∈ B} d(x, b)`.
    pub fn distance(&self, x: usize, region: &Region) -> Result<i64> {
        if region.is_empty() {
            return contract("distance to an empty region");
        }
        self.check_site(x)?;
        Ok(region.iter().map(|b| self.site_distance(x, b)).min().expect("nonempty"))
    }

    /// `min_{a ∈ A, b ∈ B} d(a, b)`.
    pub fn region_distance(&self, a: &Region, b: &Region) -> Result<i64> {
        if a.is_empty() || b.is_empty() {
            return contract("distance involving an empty region");
        }
        let mut best = i64::MAX;
        for x in a.iter() {
            for y in b.iter() {
                best = best.min(self.site_distance(x, y));
                if best == 0 {
                    return Ok(0);
                }
            }
        }
        Ok(best)
    }

    /// `B(r) = { x : d(x, B) ≤ r }`.
    pub fn neighborhood(&self, region: &Region, r: i64) -> Region {
        if region.is_empty() {
            return Region::empty();
        }
        if r >= self.diameter() {
            return self.all_sites();
        }
        (0..self.num_sites())
            .filter(|&x| region.contains(x) || region.iter().any(|b| self.site_distance(x, b) <= r))
            .collect()
    }

    /// Qubits whose cell lies in the `R×…×R` block of cells centered at `center`.
    pub fn cube(&self, center: &[i64], size: i64) -> Result<Region> {
        if size < 1 {
            return contract(format!("cube size must be >= 1, got {size}"));
        }
        if center.len() != self.dim() {
            return contract(format!("cube center has {} coordinates, lattice has {}", center.len(), self.dim()));
        }
        let cells = self.cells_per_axis();
        let below = (size - 1) / 2;
        let above = size / 2;
        Ok((0..self.num_sites())
            .filter(|&q| {
                self.cell_of(q).iter().zip(center).zip(&cells).all(|((&c, &v), &m)| {
                    if size >= m {
                        return true;
                    }
                    let off = (c - v).rem_euclid(m);
                    off <= above || off >= m - below
                })
            })
            .collect())
    }

    /// Every cell coordinate tuple, in lexicographic order with axis 0 fastest.
    pub fn all_cells(&self) -> Vec<Vec<i64>> {
        let cells = self.cells_per_axis();
        let total: i64 = cells.iter().product();
        (0..total)
            .map(|mut idx| {
                cells
                    .iter()
                    .map(|&m| {
                        let c = idx % m;
                        idx /= m;
                        c
                    })
                    .collect()
            })
            .collect()
    }

    /// Max pairwise site distance inside the region (0 for fewer than two sites).
    pub fn region_diameter(&self, region: &Region) -> i64 {
        let sites = region.to_vec();
        let mut best = 0;
        for (i, &a) in sites.iter().enumerate() {
            for &b in &sites[i + 1..] {
                best = best.max(self.site_distance(a, b));
            }
        }
        best
    }

    fn check_site(&self, x: usize) -> Result<()> {
        if x >= self.num_sites() {
            return contract(format!("site {x} outside lattice of {} sites", self.num_sites()));
        }
        Ok(())
    }
}
