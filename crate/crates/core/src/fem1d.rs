//! P1 finite elements on a periodic 1D mesh.
//!
//! With test function `phi_i` in row `i` and trial `phi_j` in column `j`,
//! the semi-implicit step solves
//!
//! ```text
//! (M + D tau S + tau T(K^n)) u^{n+1} = M u^n,
//! T_ij = -int phi_j K_h dphi_i/dx,
//! ```
//!
//! where `K_h` is the P1 interpolant of the nodal `K^n`. The integrals are
//! exact (Simpson's rule is exact on the quadratic integrands):
//!
//! ```text
//! A_ii     = 2h/3 + 2 D tau/h + tau/6 (K_{i+1} - K_{i-1})
//! A_i,i+1  = h/6  -   D tau/h + tau/6 (K_i + 2 K_{i+1})
//! A_i,i-1  = h/6  -   D tau/h - tau/6 (2 K_{i-1} + K_i)
//! B_i      = h/6 (u_{i-1} + 4 u_i + u_{i+1})
//! ```
//!
//! Every column of `T` sums to zero because the periodic basis functions sum
//! to one, so `h sum(u)` is conserved exactly up to the solve.

use crate::error::Result;
use crate::grid::Field1D;
use crate::linalg::{solve_cyclic_tridiagonal, CyclicTridiagonal};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FemParams {
    pub diffusion: f64,
    pub tau: f64,
}

/// Mass plus implicit diffusion, `M + D tau S`.
fn diffusion_system(n: usize, h: f64, p: FemParams) -> CyclicTridiagonal {
    let stiff = p.diffusion * p.tau / h;
    CyclicTridiagonal::new(
        vec![h / 6.0 - stiff; n],
        vec![2.0 * h / 3.0 + 2.0 * stiff; n],
        vec![h / 6.0 - stiff; n],
    )
}

/// The advection part `tau T(K)` as cyclic tridiagonal bands.
fn advection_bands(k: &[f64], tau: f64) -> CyclicTridiagonal {
    let n = k.len();
    let c = tau / 6.0;
    let km = |i: usize| k[(i + n - 1) % n];
    let kp = |i: usize| k[(i + 1) % n];
    CyclicTridiagonal::new(
        (0..n).map(|i| -c * (2.0 * km(i) + k[i])).collect(),
        (0..n).map(|i| c * (kp(i) - km(i))).collect(),
        (0..n).map(|i| c * (k[i] + 2.0 * kp(i))).collect(),
    )
}

/// Full semi-implicit system for the step from `K^n`.
pub fn fem_assemble(k: &Field1D, params: FemParams) -> CyclicTridiagonal {
    let h = k.grid().spacing();
    let mut sys = diffusion_system(k.grid().len(), h, params);
    let adv = advection_bands(k.values(), params.tau);
    for (s, a) in sys.lower.iter_mut().zip(&adv.lower) {
        *s += a;
    }
    for (s, a) in sys.diag.iter_mut().zip(&adv.diag) {
        *s += a;
    }
    for (s, a) in sys.upper.iter_mut().zip(&adv.upper) {
        *s += a;
    }
    sys
}

/// `B_i = h/6 (u_{i-1} + 4 u_i + u_{i+1})`, i.e. `M u`.
pub fn fem_rhs(u: &Field1D) -> Vec<f64> {
    let h = u.grid().spacing();
    let v = u.values();
    let n = v.len();
    (0..n)
        .map(|i| h / 6.0 * (v[(i + n - 1) % n] + 4.0 * v[i] + v[(i + 1) % n]))
        .collect()
}

pub fn fem_step(u: &Field1D, k: &Field1D, params: FemParams) -> Result<Field1D> {
    let x = solve_cyclic_tridiagonal(&fem_assemble(k, params), &fem_rhs(u))?;
    Field1D::new(*u.grid(), x)
}

/// Explicit advection: `(M + D tau S) u^{n+1} = M u^n - tau T(K^n) u^n`.
pub fn fem_step_explicit(u: &Field1D, k: &Field1D, params: FemParams) -> Result<Field1D> {
    let h = u.grid().spacing();
    let sys = diffusion_system(u.grid().len(), h, params);
    let transport = advection_bands(k.values(), params.tau).mul(u.values());
    let rhs: Vec<f64> = fem_rhs(u)
        .into_iter()
        .zip(transport)
        .map(|(b, t)| b - t)
        .collect();
    let x = solve_cyclic_tridiagonal(&sys, &rhs)?;
    Field1D::new(*u.grid(), x)
}
