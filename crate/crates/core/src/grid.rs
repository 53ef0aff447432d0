//! Uniform periodic grids and nodal density fields.
//!
//! A grid over `[-L, L]` (or its square) with `N` cells stores `N` distinct
//! nodes per axis: `x_i = -L + i h`, `h = 2L / N`. The node at `+L` is
//! identified with the node at `-L`, so all index arithmetic wraps modulo `N`.

use crate::error::{Error, Result};

/// Wraps a signed index into `0..n`.
#[inline]
pub fn wrap(i: isize, n: usize) -> usize {
    i.rem_euclid(n as isize) as usize
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PeriodicGrid1D {
    half_length: f64,
    cells: usize,
}

impl PeriodicGrid1D {
    pub fn new(half_length: f64, cells: usize) -> Result<Self> {
        if !(half_length.is_finite() && half_length > 0.0) {
            return Err(Error::config("L", format!("half-length must be positive, got {half_length}")));
        }
        if cells < 2 {
            return Err(Error::config("N", format!("need at least 2 cells, got {cells}")));
        }
        Ok(Self { half_length, cells })
    }

    pub fn half_length(&self) -> f64 {
        self.half_length
    }

    /// Number of cells, which is also the number of distinct nodes.
    pub fn len(&self) -> usize {
        self.cells
    }

    pub fn is_empty(&self) -> bool {
        self.cells == 0
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_length / self.cells as f64
    }

    /// Coordinate of node `i` (any integer; wrapped first).
    pub fn node(&self, i: isize) -> f64 {
        -self.half_length + wrap(i, self.cells) as f64 * self.spacing()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.cells).map(|i| self.node(i as isize)).collect()
    }

    #[inline]
    pub fn index(&self, i: isize) -> usize {
        wrap(i, self.cells)
    }

    /// Number of whole cells inside `[0, r]`, tolerant of `r / h` landing a
    /// rounding error below an integer.
    pub fn cells_within(&self, r: f64) -> usize {
        ((r / self.spacing()) * (1.0 + 1e-12)).floor() as usize
    }
}

/// Square periodic grid. Nodes are stored row-major over `(i, j)` with `i`
/// the x-index: flat index `i * N + j`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PeriodicGrid2D {
    half_length: f64,
    cells: usize,
}

impl PeriodicGrid2D {
    pub fn new(half_length: f64, cells: usize) -> Result<Self> {
        let axis = PeriodicGrid1D::new(half_length, cells)?;
        Ok(Self {
            half_length: axis.half_length,
            cells: axis.cells,
        })
    }

    pub fn axis(&self) -> PeriodicGrid1D {
        PeriodicGrid1D {
            half_length: self.half_length,
            cells: self.cells,
        }
    }

    pub fn half_length(&self) -> f64 {
        self.half_length
    }

    /// Cells per axis.
    pub fn cells(&self) -> usize {
        self.cells
    }

    /// Total node count `N^2`.
    pub fn len(&self) -> usize {
        self.cells * self.cells
    }

    pub fn is_empty(&self) -> bool {
        self.cells == 0
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_length / self.cells as f64
    }

    #[inline]
    pub fn index(&self, i: isize, j: isize) -> usize {
        wrap(i, self.cells) * self.cells + wrap(j, self.cells)
    }

    /// Inverse of [`index`](Self::index).
    #[inline]
    pub fn coords(&self, idx: usize) -> (usize, usize) {
        (idx / self.cells, idx % self.cells)
    }

    pub fn node(&self, i: isize, j: isize) -> (f64, f64) {
        let axis = self.axis();
        (axis.node(i), axis.node(j))
    }
}

/// Nodal values of a density on a 1D periodic grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Field1D {
    grid: PeriodicGrid1D,
    values: Vec<f64>,
}

impl Field1D {
    pub fn new(grid: PeriodicGrid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::config(
                "field",
                format!("expected {} values, got {}", grid.len(), values.len()),
            ));
        }
        Ok(Self { grid, values })
    }

    pub fn constant(grid: PeriodicGrid1D, value: f64) -> Self {
        Self {
            grid,
            values: vec![value; grid.len()],
        }
    }

    pub fn from_fn(grid: PeriodicGrid1D, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.nodes().into_iter().map(f).collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> &PeriodicGrid1D {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Value at a wrapped index.
    #[inline]
    pub fn at(&self, i: isize) -> f64 {
        self.values[self.grid.index(i)]
    }

    /// Circular shift by `s` nodes: `out[i] = self[i - s]`.
    pub fn shifted(&self, s: isize) -> Self {
        let n = self.values.len();
        let values = (0..n).map(|i| self.at(i as isize - s)).collect();
        Self {
            grid: self.grid,
            values,
        }
    }
}

/// Nodal values of a density on a 2D periodic grid (row-major, see
/// [`PeriodicGrid2D`]).
#[derive(Clone, Debug, PartialEq)]
pub struct Field2D {
    grid: PeriodicGrid2D,
    values: Vec<f64>,
}

impl Field2D {
    pub fn new(grid: PeriodicGrid2D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::config(
                "field",
                format!("expected {} values, got {}", grid.len(), values.len()),
            ));
        }
        Ok(Self { grid, values })
    }

    pub fn constant(grid: PeriodicGrid2D, value: f64) -> Self {
        Self {
            grid,
            values: vec![value; grid.len()],
        }
    }

    pub fn from_fn(grid: PeriodicGrid2D, f: impl Fn(f64, f64) -> f64) -> Self {
        let n = grid.cells();
        let mut values = Vec::with_capacity(grid.len());
        for i in 0..n {
            for j in 0..n {
                let (x, y) = grid.node(i as isize, j as isize);
                values.push(f(x, y));
            }
        }
        Self { grid, values }
    }

    pub fn grid(&self) -> &PeriodicGrid2D {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    #[inline]
    pub fn at(&self, i: isize, j: isize) -> f64 {
        self.values[self.grid.index(i, j)]
    }

    /// Swaps the two axes: `out(i, j) = self(j, i)`.
    pub fn transposed(&self) -> Self {
        let n = self.grid.cells();
        let mut values = vec![0.0; self.values.len()];
        for i in 0..n {
            for j in 0..n {
                values[i * n + j] = self.values[j * n + i];
            }
        }
        Self {
            grid: self.grid,
            values,
        }
    }
}
