//! Semi-implicit finite-difference and finite-volume steps in 1D.
//!
//! Both schemes treat diffusion implicitly and lag the advection velocity:
//! `K^n` is computed from `u^n` and multiplies `u^{n+1}` in the transport
//! term. Each step is one cyclic tridiagonal solve.

use crate::error::Result;
use crate::grid::Field1D;
use crate::linalg::{solve_cyclic_tridiagonal, CyclicTridiagonal};

/// `beta = D tau / h^2`, `gamma = tau / (2h)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchemeCoefficients {
    pub beta: f64,
    pub gamma: f64,
}

impl SchemeCoefficients {
    pub fn new(diffusion: f64, tau: f64, h: f64) -> Self {
        Self {
            beta: diffusion * tau / (h * h),
            gamma: tau / (2.0 * h),
        }
    }
}

/// Finite differences, centred transport:
/// `u_i (1 + 2b) + u_{i+1} (-b + g K_{i+1}) + u_{i-1} (-b - g K_{i-1}) = u_i^n`.
pub fn fd_matrix(k: &[f64], coeffs: SchemeCoefficients) -> CyclicTridiagonal {
    let n = k.len();
    let SchemeCoefficients { beta, gamma } = coeffs;
    let lower = (0..n).map(|i| -beta - gamma * k[(i + n - 1) % n]).collect();
    let diag = vec![1.0 + 2.0 * beta; n];
    let upper = (0..n).map(|i| -beta + gamma * k[(i + 1) % n]).collect();
    CyclicTridiagonal::new(lower, diag, upper)
}

/// Finite volumes with interface averages of `u` and `K`.
pub fn fv_matrix(k: &[f64], coeffs: SchemeCoefficients) -> CyclicTridiagonal {
    let n = k.len();
    let SchemeCoefficients { beta, gamma } = coeffs;
    let km = |i: usize| k[(i + n - 1) % n];
    let kp = |i: usize| k[(i + 1) % n];
    let lower = (0..n).map(|i| -beta - gamma * (k[i] + km(i)) / 2.0).collect();
    let diag = (0..n)
        .map(|i| 1.0 + 2.0 * beta + gamma * (kp(i) - km(i)) / 2.0)
        .collect();
    let upper = (0..n).map(|i| -beta + gamma * (kp(i) + k[i]) / 2.0).collect();
    CyclicTridiagonal::new(lower, diag, upper)
}

pub fn fd_step(u: &Field1D, k: &Field1D, coeffs: SchemeCoefficients) -> Result<Field1D> {
    let x = solve_cyclic_tridiagonal(&fd_matrix(k.values(), coeffs), u.values())?;
    Field1D::new(*u.grid(), x)
}

pub fn fv_step(u: &Field1D, k: &Field1D, coeffs: SchemeCoefficients) -> Result<Field1D> {
    let x = solve_cyclic_tridiagonal(&fv_matrix(k.values(), coeffs), u.values())?;
    Field1D::new(*u.grid(), x)
}
