//! The 2D operator
//! `K[u](x) = alpha * int_{B_r} g(u(x + y)) w y / |y| dy`
//! with a constant magnitude `w`, sampled by the rectangle rule.

use num_complex::Complex;

use super::fft::CircularConvolver;
use crate::error::{Error, Result};
use crate::grid::PeriodicGrid2D;

/// Two components of a vector field on a 2D grid, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField2D {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl VectorField2D {
    pub fn zeros(len: usize) -> Self {
        Self {
            x: vec![0.0; len],
            y: vec![0.0; len],
        }
    }

    pub fn scaled_add(&mut self, a: f64, other: &VectorField2D) {
        for (s, o) in self.x.iter_mut().zip(&other.x) {
            *s += a * o;
        }
        for (s, o) in self.y.iter_mut().zip(&other.y) {
            *s += a * o;
        }
    }
}

/// Constant magnitude `w` of the 2D kernel.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum KernelWeight {
    /// `w = 1 / (2 |B_r|) = 1 / (2 pi r^2)`.
    #[default]
    BallAverage,
    /// `w = 1`: any normalisation is carried by the interaction strength,
    /// as with the 1D sign kernel.
    Unit,
}

impl KernelWeight {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Unit => "unit",
            Self::BallAverage => "ball_average",
        }
    }

    pub fn value(self, radius: f64) -> f64 {
        match self {
            Self::Unit => 1.0,
            Self::BallAverage => 1.0 / (2.0 * std::f64::consts::PI * radius * radius),
        }
    }
}

impl std::str::FromStr for KernelWeight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unit" => Ok(Self::Unit),
            "ball_average" => Ok(Self::BallAverage),
            other => Err(Error::config("omega", format!("unknown kernel weight '{other}'"))),
        }
    }
}

/// Components `w y_m / |y|` of the kernel on the nodes of `B_r(0)`, stored
/// in lag order per axis (see [`SignKernel1D`](super::SignKernel1D)).
/// A node is inside the ball iff `a^2 + b^2 <= (r / h)^2`; the value at
/// `y = 0` is 0.
#[derive(Clone, Debug)]
pub struct RadialKernel2D {
    grid: PeriodicGrid2D,
    radius: f64,
    weight: f64,
    x: Vec<f64>,
    y: Vec<f64>,
}

/// Signed offset of lag `k` on an axis of `n` points. `None` for the
/// ambiguous lag `n / 2`.
fn signed_lag(k: usize, n: usize) -> Option<isize> {
    if 2 * k == n {
        None
    } else if 2 * k < n {
        Some(k as isize)
    } else {
        Some(k as isize - n as isize)
    }
}

impl RadialKernel2D {
    pub fn new(grid: PeriodicGrid2D, radius: f64, weight: KernelWeight) -> Result<Self> {
        let axis = grid.axis();
        let reach = axis.cells_within(radius);
        if reach == 0 {
            return Err(Error::config(
                "r",
                format!("radius {radius} is below one cell (h = {})", grid.spacing()),
            ));
        }
        if 2 * reach > grid.cells() {
            return Err(Error::config(
                "r",
                format!("radius {radius} exceeds the half-length {}", grid.half_length()),
            ));
        }
        let n = grid.cells();
        let ratio = radius / grid.spacing();
        let limit = ratio * ratio * (1.0 + 1e-12);
        let weight = weight.value(radius);
        let mut x = vec![0.0; n * n];
        let mut y = vec![0.0; n * n];
        for a in 0..n {
            for b in 0..n {
                // Lags at exactly N/2 hold both +L and -L, whose odd
                // contributions cancel.
                let (Some(sa), Some(sb)) = (signed_lag(a, n), signed_lag(b, n)) else {
                    continue;
                };
                let d2 = (sa * sa + sb * sb) as f64;
                if d2 == 0.0 || d2 > limit {
                    continue;
                }
                let d = d2.sqrt();
                x[a * n + b] = weight * sa as f64 / d;
                y[a * n + b] = weight * sb as f64 / d;
            }
        }
        Ok(Self {
            grid,
            radius,
            weight,
            x,
            y,
        })
    }

    pub fn grid(&self) -> &PeriodicGrid2D {
        &self.grid
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Kernel magnitude `w`.
    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn samples_x(&self) -> &[f64] {
        &self.x
    }

    pub fn samples_y(&self) -> &[f64] {
        &self.y
    }
}

/// Direct summation `-h^2 sum_lag g[idx - lag] k[lag]` with unit strength.
pub(crate) fn direct_sum_2d(kernel: &RadialKernel2D, g: &[f64]) -> VectorField2D {
    let n = kernel.grid.cells();
    let h2 = kernel.grid.spacing().powi(2);
    let nz: Vec<(usize, usize, f64, f64)> = (0..n * n)
        .filter(|&l| kernel.x[l] != 0.0 || kernel.y[l] != 0.0)
        .map(|l| (l / n, l % n, kernel.x[l], kernel.y[l]))
        .collect();
    let mut out = VectorField2D::zeros(n * n);
    for i in 0..n {
        for j in 0..n {
            let (mut sx, mut sy) = (0.0, 0.0);
            for &(a, b, kx, ky) in &nz {
                let gv = g[((i + n - a) % n) * n + (j + n - b) % n];
                sx += gv * kx;
                sy += gv * ky;
            }
            out.x[i * n + j] = -h2 * sx;
            out.y[i * n + j] = -h2 * sy;
        }
    }
    out
}

/// FFT evaluation with precomputed component spectra.
#[derive(Clone, Debug)]
pub struct FftKernel2D {
    kernel: RadialKernel2D,
    convolver: CircularConvolver,
    spectrum_x: Vec<Complex<f64>>,
    spectrum_y: Vec<Complex<f64>>,
}

impl FftKernel2D {
    pub fn new(kernel: RadialKernel2D) -> Self {
        let convolver = CircularConvolver::new(kernel.grid.cells(), 2);
        let spectrum_x = convolver.spectrum(&kernel.x);
        let spectrum_y = convolver.spectrum(&kernel.y);
        Self {
            kernel,
            convolver,
            spectrum_x,
            spectrum_y,
        }
    }

    pub fn kernel(&self) -> &RadialKernel2D {
        &self.kernel
    }

    /// Both components of `-strength * h^2 * (g * k)`.
    pub fn apply(&self, g: &[f64], strength: f64) -> Result<VectorField2D> {
        let h2 = self.kernel.grid.spacing().powi(2);
        let norm = g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let g_hat = self.convolver.forward_real(g);
        let scale = -strength * h2;
        Ok(VectorField2D {
            x: self
                .convolver
                .apply_spectrum(&g_hat, &self.spectrum_x, scale, norm)?,
            y: self
                .convolver
                .apply_spectrum(&g_hat, &self.spectrum_y, scale, norm)?,
        })
    }
}

/// `K[u]` in 2D by FFT, identity `g`, kernel weight `1 / (2 pi r^2)`.
pub fn k_fft_2d(u: &crate::grid::Field2D, alpha: f64, radius: f64) -> Result<VectorField2D> {
    FftKernel2D::new(RadialKernel2D::new(*u.grid(), radius, KernelWeight::BallAverage)?).apply(u.values(), alpha)
}

/// `K[u]` in 2D by direct summation, identity `g`, kernel weight `1 / (2 pi r^2)`.
pub fn k_direct_2d(u: &crate::grid::Field2D, alpha: f64, radius: f64) -> Result<VectorField2D> {
    let kernel = RadialKernel2D::new(*u.grid(), radius, KernelWeight::BallAverage)?;
    let mut k = direct_sum_2d(&kernel, u.values());
    k.x.iter_mut().chain(k.y.iter_mut()).for_each(|v| *v *= alpha);
    Ok(k)
}
