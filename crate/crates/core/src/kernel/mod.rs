//! Evaluation of the non-local advection velocity `K[u]` (and `K_u`, `K_v`
//! for two populations).
//!
//! Three backends are available in 1D: the trapezoid rule (half weights at
//! `|y| = r`), a direct circular sum over the kernel support, and an FFT
//! circular convolution. The last two use full weights at `|y| = r` and agree
//! to rounding; the trapezoid rule differs from them by at most
//! `alpha h |u|_inf`. In 2D only the direct and FFT backends exist.
//!
//! All backends compute `K = -strength * h^d * (g * w)` where `w` holds the
//! kernel samples in lag order, which is the same as
//! `strength * h^d * sum_y g(x + y) w(y)` for an odd kernel.

mod fft;
mod gfunc;
mod one_d;
mod two_d;

pub use gfunc::{apply_g, GFunction};
pub use one_d::{k_direct_1d, k_fft_1d, k_trapezoid_1d, FftKernel1D, SignKernel1D};
pub use two_d::{k_direct_2d, k_fft_2d, FftKernel2D, KernelWeight, RadialKernel2D, VectorField2D};

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::{Field1D, Field2D, PeriodicGrid1D, PeriodicGrid2D};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelMethod {
    Fft,
    Trapezoid,
    Direct,
}

impl FromStr for KernelMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fft" => Ok(Self::Fft),
            "trapezoid" => Ok(Self::Trapezoid),
            "direct" => Ok(Self::Direct),
            other => Err(Error::config("kernel", format!("unknown method '{other}'"))),
        }
    }
}

impl KernelMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Fft => "fft",
            Self::Trapezoid => "trapezoid",
            Self::Direct => "direct",
        }
    }
}

/// Interaction strengths.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Interaction {
    /// One population, `g(u) = u`.
    Single { alpha: f64 },
    /// Two populations with population-pressure `g` functions:
    /// `K_u = Su Conv(g_uu) + C Conv(g_uv)`, `K_v = Sv Conv(g_vv) + C Conv(g_vu)`.
    Two { su: f64, sv: f64, c: f64 },
}

/// Largest grid for which the direct backend may be used outside tests.
pub const DIRECT_MAX_NODES: usize = 128;

#[derive(Clone, Debug)]
enum Backend1D {
    Trapezoid,
    Direct,
    Fft(FftKernel1D),
}

/// Unit-strength convolution `Conv(g)` on a 1D grid.
#[derive(Clone, Debug)]
pub struct NonlocalOperator1D {
    kernel: SignKernel1D,
    backend: Backend1D,
}

impl NonlocalOperator1D {
    pub fn new(grid: PeriodicGrid1D, radius: f64, method: KernelMethod) -> Result<Self> {
        let kernel = SignKernel1D::new(grid, radius)?;
        let backend = match method {
            KernelMethod::Trapezoid => Backend1D::Trapezoid,
            KernelMethod::Direct => Backend1D::Direct,
            KernelMethod::Fft => Backend1D::Fft(FftKernel1D::new(kernel.clone())),
        };
        Ok(Self { kernel, backend })
    }

    pub fn method(&self) -> KernelMethod {
        match self.backend {
            Backend1D::Trapezoid => KernelMethod::Trapezoid,
            Backend1D::Direct => KernelMethod::Direct,
            Backend1D::Fft(_) => KernelMethod::Fft,
        }
    }

    pub fn grid(&self) -> &PeriodicGrid1D {
        self.kernel.grid()
    }

    /// `Conv(g)` scaled by `strength`.
    pub fn apply(&self, g: &[f64], strength: f64) -> Result<Vec<f64>> {
        let raw = match &self.backend {
            Backend1D::Fft(f) => return f.apply(g, strength),
            Backend1D::Trapezoid => one_d::trapezoid_sum(self.kernel.grid(), self.kernel.reach(), g),
            Backend1D::Direct => one_d::direct_sum(&self.kernel, g),
        };
        Ok(raw.into_iter().map(|k| strength * k).collect())
    }
}

#[derive(Clone, Debug)]
enum Backend2D {
    Direct(RadialKernel2D),
    Fft(FftKernel2D),
}

/// Unit-strength vector convolution on a 2D grid.
#[derive(Clone, Debug)]
pub struct NonlocalOperator2D {
    grid: PeriodicGrid2D,
    backend: Backend2D,
}

impl NonlocalOperator2D {
    pub fn new(
        grid: PeriodicGrid2D,
        radius: f64,
        method: KernelMethod,
        weight: KernelWeight,
    ) -> Result<Self> {
        let kernel = RadialKernel2D::new(grid, radius, weight)?;
        let backend = match method {
            KernelMethod::Trapezoid => {
                return Err(Error::config(
                    "kernel",
                    "the trapezoid backend exists only in 1D",
                ))
            }
            KernelMethod::Direct => Backend2D::Direct(kernel),
            KernelMethod::Fft => Backend2D::Fft(FftKernel2D::new(kernel)),
        };
        Ok(Self { grid, backend })
    }

    pub fn grid(&self) -> &PeriodicGrid2D {
        &self.grid
    }

    pub fn apply(&self, g: &[f64], strength: f64) -> Result<VectorField2D> {
        match &self.backend {
            Backend2D::Fft(f) => f.apply(g, strength),
            Backend2D::Direct(k) => {
                let mut out = two_d::direct_sum_2d(k, g);
                out.x.iter_mut().chain(out.y.iter_mut()).for_each(|v| *v *= strength);
                Ok(out)
            }
        }
    }
}

/// Evaluates `K[u]` (one population) or `(K_u, K_v)` (two populations) in 1D.
/// Returns one field per population.
pub fn compute_k_1d(
    op: &NonlocalOperator1D,
    u: &Field1D,
    v: Option<&Field1D>,
    interaction: Interaction,
) -> Result<Vec<Field1D>> {
    let grid = *u.grid();
    match (interaction, v) {
        (Interaction::Single { alpha }, None) => {
            Ok(vec![Field1D::new(grid, op.apply(u.values(), alpha)?)?])
        }
        (Interaction::Two { su, sv, c }, Some(v)) => {
            if op.method() == KernelMethod::Trapezoid {
                return Err(Error::config(
                    "kernel",
                    "the trapezoid backend supports only the single-population model",
                ));
            }
            let gu = apply_g(GFunction::PopulationPressureU, u.values(), Some(v.values()))?;
            let gv = apply_g(GFunction::PopulationPressureV, u.values(), Some(v.values()))?;
            let conv_u = op.apply(&gu, 1.0)?;
            let conv_v = op.apply(&gv, 1.0)?;
            let ku = conv_u.iter().zip(&conv_v).map(|(a, b)| su * a + c * b).collect();
            let kv = conv_v.iter().zip(&conv_u).map(|(a, b)| sv * a + c * b).collect();
            Ok(vec![Field1D::new(grid, ku)?, Field1D::new(grid, kv)?])
        }
        (Interaction::Single { .. }, Some(_)) => Err(Error::config(
            "model",
            "single-population interaction given two fields",
        )),
        (Interaction::Two { .. }, None) => Err(Error::config(
            "model",
            "two-population interaction needs the second field",
        )),
    }
}

/// 2D counterpart of [`compute_k_1d`].
pub fn compute_k_2d(
    op: &NonlocalOperator2D,
    u: &Field2D,
    v: Option<&Field2D>,
    interaction: Interaction,
) -> Result<Vec<VectorField2D>> {
    match (interaction, v) {
        (Interaction::Single { alpha }, None) => Ok(vec![op.apply(u.values(), alpha)?]),
        (Interaction::Two { su, sv, c }, Some(v)) => {
            let gu = apply_g(GFunction::PopulationPressureU, u.values(), Some(v.values()))?;
            let gv = apply_g(GFunction::PopulationPressureV, u.values(), Some(v.values()))?;
            let conv_u = op.apply(&gu, 1.0)?;
            let conv_v = op.apply(&gv, 1.0)?;
            let n = gu.len();
            let mut ku = VectorField2D::zeros(n);
            ku.scaled_add(su, &conv_u);
            ku.scaled_add(c, &conv_v);
            let mut kv = VectorField2D::zeros(n);
            kv.scaled_add(sv, &conv_v);
            kv.scaled_add(c, &conv_u);
            Ok(vec![ku, kv])
        }
        (Interaction::Single { .. }, Some(_)) => Err(Error::config(
            "model",
            "single-population interaction given two fields",
        )),
        (Interaction::Two { .. }, None) => Err(Error::config(
            "model",
            "two-population interaction needs the second field",
        )),
    }
}
