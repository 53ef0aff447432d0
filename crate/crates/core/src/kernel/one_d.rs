//! The 1D operator `K[u](x) = alpha * int_{-r}^{r} u(x + y) sgn(y) dy`.

use num_complex::Complex;

use super::fft::CircularConvolver;
use crate::error::{Error, Result};
use crate::grid::{Field1D, PeriodicGrid1D};

/// Samples of `sgn(y)` on `[-r, r]` (0 elsewhere), stored in lag order:
/// entry `k` holds the value at `y = k h` for `k <= N/2` and at
/// `y = (k - N) h` above. Nodes with `|y| <= r` carry full weight.
#[derive(Clone, Debug)]
pub struct SignKernel1D {
    grid: PeriodicGrid1D,
    radius: f64,
    reach: usize,
    samples: Vec<f64>,
}

impl SignKernel1D {
    pub fn new(grid: PeriodicGrid1D, radius: f64) -> Result<Self> {
        let reach = check_reach(&grid, radius)?;
        let n = grid.len();
        let mut samples = vec![0.0; n];
        for k in 1..=reach {
            // +k and -k collide when 2k == N; their contributions cancel.
            if 2 * k == n {
                continue;
            }
            samples[k] = 1.0;
            samples[n - k] = -1.0;
        }
        Ok(Self {
            grid,
            radius,
            reach,
            samples,
        })
    }

    pub fn grid(&self) -> &PeriodicGrid1D {
        &self.grid
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// `N_r = floor(r / h)`.
    pub fn reach(&self) -> usize {
        self.reach
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }
}

fn check_reach(grid: &PeriodicGrid1D, radius: f64) -> Result<usize> {
    let reach = grid.cells_within(radius);
    if reach == 0 {
        return Err(Error::config(
            "r",
            format!("radius {radius} is below one cell (h = {})", grid.spacing()),
        ));
    }
    if 2 * reach > grid.len() {
        return Err(Error::config(
            "r",
            format!("radius {radius} exceeds the half-length {}", grid.half_length()),
        ));
    }
    Ok(reach)
}

/// Trapezoid rule on `g`:
/// `K_i = h [ (g_{i+Nr} - g_{i-Nr}) / 2 + sum_{k=1}^{Nr-1} (g_{i+k} - g_{i-k}) ]`
/// with unit strength.
pub(crate) fn trapezoid_sum(grid: &PeriodicGrid1D, reach: usize, g: &[f64]) -> Vec<f64> {
    let n = grid.len();
    let h = grid.spacing();
    let at = |i: usize, k: isize| g[grid.index(i as isize + k)];
    (0..n)
        .map(|i| {
            let r = reach as isize;
            let mut s = 0.5 * (at(i, r) - at(i, -r));
            for k in 1..r {
                s += at(i, k) - at(i, -k);
            }
            h * s
        })
        .collect()
}

/// Direct `O(N * Nr)` circular sum `-h sum_k g_{j-k} w_k` with unit strength.
pub(crate) fn direct_sum(kernel: &SignKernel1D, g: &[f64]) -> Vec<f64> {
    let n = g.len();
    let h = kernel.grid.spacing();
    let nz: Vec<(usize, f64)> = kernel
        .samples
        .iter()
        .enumerate()
        .filter(|(_, &w)| w != 0.0)
        .map(|(k, &w)| (k, w))
        .collect();
    (0..n)
        .map(|j| -h * nz.iter().map(|&(k, w)| g[(j + n - k) % n] * w).sum::<f64>())
        .collect()
}

/// FFT evaluation with a precomputed kernel spectrum.
#[derive(Clone, Debug)]
pub struct FftKernel1D {
    kernel: SignKernel1D,
    convolver: CircularConvolver,
    spectrum: Vec<Complex<f64>>,
}

impl FftKernel1D {
    pub fn new(kernel: SignKernel1D) -> Self {
        let convolver = CircularConvolver::new(kernel.grid.len(), 1);
        let spectrum = convolver.spectrum(&kernel.samples);
        Self {
            kernel,
            convolver,
            spectrum,
        }
    }

    pub fn kernel(&self) -> &SignKernel1D {
        &self.kernel
    }

    /// `-strength * h * IDFT(DFT(g) DFT(w))`.
    pub fn apply(&self, g: &[f64], strength: f64) -> Result<Vec<f64>> {
        let h = self.kernel.grid.spacing();
        let norm = g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let g_hat = self.convolver.forward_real(g);
        self.convolver
            .apply_spectrum(&g_hat, &self.spectrum, -strength * h, norm)
    }
}

/// `K[u]` by the trapezoid rule with half weights at `|y| = r`.
pub fn k_trapezoid_1d(u: &Field1D, alpha: f64, radius: f64) -> Result<Field1D> {
    let grid = *u.grid();
    let reach = check_reach(&grid, radius)?;
    let values = trapezoid_sum(&grid, reach, u.values())
        .into_iter()
        .map(|k| alpha * k)
        .collect();
    Field1D::new(grid, values)
}

/// `K[u] = -alpha h IDFT(DFT(u) DFT(w))`.
pub fn k_fft_1d(u: &Field1D, alpha: f64, radius: f64) -> Result<Field1D> {
    let op = FftKernel1D::new(SignKernel1D::new(*u.grid(), radius)?);
    Field1D::new(*u.grid(), op.apply(u.values(), alpha)?)
}

/// `K[u]` by direct circular summation over the kernel support.
pub fn k_direct_1d(u: &Field1D, alpha: f64, radius: f64) -> Result<Field1D> {
    let kernel = SignKernel1D::new(*u.grid(), radius)?;
    let values = direct_sum(&kernel, u.values())
        .into_iter()
        .map(|k| alpha * k)
        .collect();
    Field1D::new(*u.grid(), values)
}
