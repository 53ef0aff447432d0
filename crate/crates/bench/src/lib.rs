//! Shared fixtures for the benchmarks.

use nonlocal_core::ic::PerturbationSampler;
use nonlocal_core::{Field1D, Field2D, PeriodicGrid1D, PeriodicGrid2D};

/// Seeded near-uniform 1D field on `[-10, 10]` with `n` cells.
pub fn field_1d(n: usize) -> Field1D {
    let grid = PeriodicGrid1D::new(10.0, n).expect("valid grid");
    PerturbationSampler::new(7).field1d(grid, 1.0, 0.01)
}

/// Seeded near-uniform 2D field on `[-2.5, 2.5]^2` with `n` cells per axis.
pub fn field_2d(n: usize) -> Field2D {
    let grid = PeriodicGrid2D::new(2.5, n).expect("valid grid");
    PerturbationSampler::new(7).field2d(grid, 0.2, 0.01)
}
