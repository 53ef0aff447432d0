//! Initial conditions.
//!
//! Random perturbations come from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded
//! with `SeedableRng::seed_from_u64(seed)`. Each sample is `rand`'s standard
//! `f64` draw (53 random mantissa bits, uniform on `[0, 1)`) scaled by the
//! amplitude. Nodes are filled in storage order, so a given seed reproduces
//! the same field bit-for-bit on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grid::{Field1D, Field2D, PeriodicGrid1D, PeriodicGrid2D};

/// Deterministic stream of uniform perturbations. Drawing several fields
/// from one sampler gives independent, reproducible fields (e.g. `u` then `v`).
pub struct PerturbationSampler {
    rng: ChaCha8Rng,
}

impl PerturbationSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn draw(&mut self, n: usize, base: f64, amplitude: f64) -> Vec<f64> {
        (0..n)
            .map(|_| base + amplitude * self.rng.random::<f64>())
            .collect()
    }

    pub fn field1d(&mut self, grid: PeriodicGrid1D, base: f64, amplitude: f64) -> Field1D {
        let values = self.draw(grid.len(), base, amplitude);
        Field1D::new(grid, values).expect("length matches grid")
    }

    pub fn field2d(&mut self, grid: PeriodicGrid2D, base: f64, amplitude: f64) -> Field2D {
        let values = self.draw(grid.len(), base, amplitude);
        Field2D::new(grid, values).expect("length matches grid")
    }
}

/// `base + xi_i` with `xi_i` i.i.d. uniform on `[0, amplitude)`.
pub fn perturbed_constant_ic(grid: PeriodicGrid1D, base: f64, amplitude: f64, seed: u64) -> Field1D {
    debug_assert!(amplitude >= 0.0);
    PerturbationSampler::new(seed).field1d(grid, base, amplitude)
}

pub fn perturbed_constant_ic_2d(grid: PeriodicGrid2D, base: f64, amplitude: f64, seed: u64) -> Field2D {
    debug_assert!(amplitude >= 0.0);
    PerturbationSampler::new(seed).field2d(grid, base, amplitude)
}

/// Five Gaussian bumps centred at `0`, `±L/2` and `±L`.
pub fn gaussian_sum(x: f64, half_length: f64) -> f64 {
    let l = half_length;
    [0.0, l, -l, 0.5 * l, -0.5 * l]
        .iter()
        .map(|c| (-(x - c) * (x - c)).exp())
        .sum()
}

pub fn gaussian_sum_ic(grid: PeriodicGrid1D) -> Field1D {
    let l = grid.half_length();
    Field1D::from_fn(grid, |x| gaussian_sum(x, l))
}
