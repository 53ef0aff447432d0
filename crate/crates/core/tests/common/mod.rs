//! Independent reference implementations shared by the integration tests.
//!
//! Everything here is built from the continuous formulation in physical
//! coordinates (brute-force periodic sums, element quadrature, dense LU) and
//! does not reuse any assembly code from the library.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub mod checks;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(lo..hi)).collect()
}

pub fn rel_inf(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let num = a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
    let den = b.iter().fold(0.0f64, |m, y| m.max(y.abs()));
    if den == 0.0 {
        num
    } else {
        num / den
    }
}

pub fn rel_l2(a: &[f64], b: &[f64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    let den: f64 = b.iter().map(|y| y * y).sum();
    (num / den).sqrt()
}

/// Minimum-image offset on a circle of length `period`.
fn offset(d: f64, period: f64) -> f64 {
    d - period * (d / period).round()
}

/// `K_i = alpha * h * sum_m sgn(x_m - x_i) g_m` over nodes with
/// `0 < |x_m - x_i| <= r` (minimum image, half-period lag excluded).
pub fn oracle_k_1d(g: &[f64], half_length: f64, radius: f64, alpha: f64) -> Vec<f64> {
    let n = g.len();
    let period = 2.0 * half_length;
    let h = period / n as f64;
    let eps = 1e-9 * h;
    let x = |i: usize| -half_length + i as f64 * h;
    (0..n)
        .map(|i| {
            let mut s = 0.0;
            for (m, gm) in g.iter().enumerate() {
                let d = offset(x(m) - x(i), period);
                if d.abs() < eps || d.abs() > radius + eps || (d.abs() - half_length).abs() < eps {
                    continue;
                }
                s += d.signum() * gm;
            }
            alpha * h * s
        })
        .collect()
}

/// 2D counterpart: `K(x) = alpha * w * h^2 * sum g(x') (x' - x)/|x' - x|`
/// over nodes with `0 < |x' - x| <= r`. Storage index is `i * N + j` with
/// `i` along x.
pub fn oracle_k_2d(
    g: &[f64],
    cells: usize,
    half_length: f64,
    radius: f64,
    alpha: f64,
    weight: f64,
) -> (Vec<f64>, Vec<f64>) {
    let n = cells;
    let period = 2.0 * half_length;
    let h = period / n as f64;
    let eps = 1e-9 * h;
    let c = |i: usize| -half_length + i as f64 * h;
    let mut kx = vec![0.0; n * n];
    let mut ky = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let (mut sx, mut sy) = (0.0, 0.0);
            for a in 0..n {
                for b in 0..n {
                    let dx = offset(c(a) - c(i), period);
                    let dy = offset(c(b) - c(j), period);
                    if (dx.abs() - half_length).abs() < eps || (dy.abs() - half_length).abs() < eps {
                        continue;
                    }
                    let d = dx.hypot(dy);
                    if d < eps || d > radius + eps {
                        continue;
                    }
                    sx += g[a * n + b] * dx / d;
                    sy += g[a * n + b] * dy / d;
                }
            }
            kx[i * n + j] = alpha * weight * h * h * sx;
            ky[i * n + j] = alpha * weight * h * h * sy;
        }
    }
    (kx, ky)
}

pub fn solve_dense(a: &DMatrix<f64>, b: &[f64]) -> Vec<f64> {
    let x = a
        .clone()
        .lu()
        .solve(&DVector::from_column_slice(b))
        .expect("oracle matrix is singular");
    x.iter().copied().collect()
}

fn wrap(i: isize, n: usize) -> usize {
    i.rem_euclid(n as isize) as usize
}

/// Semi-implicit finite differences from the operator form
/// `(u' - u)/tau = D (u'_{i+1} - 2u'_i + u'_{i-1})/h^2 - (K_{i+1}u'_{i+1} - K_{i-1}u'_{i-1})/(2h)`.
pub fn fd_dense(k: &[f64], h: f64, d: f64, tau: f64) -> DMatrix<f64> {
    let n = k.len();
    let mut a = DMatrix::identity(n, n);
    for i in 0..n {
        let (ip, im) = (wrap(i as isize + 1, n), wrap(i as isize - 1, n));
        a[(i, ip)] += -tau * d / (h * h) + tau * k[ip] / (2.0 * h);
        a[(i, im)] += -tau * d / (h * h) - tau * k[im] / (2.0 * h);
        a[(i, i)] += 2.0 * tau * d / (h * h);
    }
    a
}

/// Finite volumes: interface flux `F_{i+1/2} = (K_i + K_{i+1})/2 * (u'_i + u'_{i+1})/2`.
pub fn fv_dense(k: &[f64], h: f64, d: f64, tau: f64) -> DMatrix<f64> {
    let n = k.len();
    let mut a = DMatrix::identity(n, n);
    for i in 0..n {
        let (ip, im) = (wrap(i as isize + 1, n), wrap(i as isize - 1, n));
        let kr = 0.5 * (k[i] + k[ip]);
        let kl = 0.5 * (k[im] + k[i]);
        // + tau/h (F_right - F_left)
        a[(i, i)] += tau / h * 0.5 * (kr - kl);
        a[(i, ip)] += tau / h * 0.5 * kr;
        a[(i, im)] -= tau / h * 0.5 * kl;
        a[(i, i)] += 2.0 * tau * d / (h * h);
        a[(i, ip)] -= tau * d / (h * h);
        a[(i, im)] -= tau * d / (h * h);
    }
    a
}

/// P1 mass, stiffness and advection `T_ab = -int phi_b K_h dphi_a/dx` on a
/// periodic 1D mesh, integrated element by element with Simpson's rule.
pub struct Fem1dDense {
    pub mass: DMatrix<f64>,
    pub stiffness: DMatrix<f64>,
    pub advection: DMatrix<f64>,
}

pub fn fem1d_dense(k: &[f64], h: f64) -> Fem1dDense {
    let n = k.len();
    let mut mass = DMatrix::zeros(n, n);
    let mut stiffness = DMatrix::zeros(n, n);
    let mut advection = DMatrix::zeros(n, n);
    let points = [(0.0, h / 6.0), (0.5, 4.0 * h / 6.0), (1.0, h / 6.0)];
    for e in 0..n {
        let nodes = [e, (e + 1) % n];
        // local basis on s in [0, 1]: phi_0 = 1 - s, phi_1 = s
        let phi = |a: usize, s: f64| if a == 0 { 1.0 - s } else { s };
        let dphi = |a: usize| if a == 0 { -1.0 / h } else { 1.0 / h };
        for &(s, w) in &points {
            let kh = phi(0, s) * k[nodes[0]] + phi(1, s) * k[nodes[1]];
            for a in 0..2 {
                for b in 0..2 {
                    let (ga, gb) = (nodes[a], nodes[b]);
                    mass[(ga, gb)] += w * phi(a, s) * phi(b, s);
                    stiffness[(ga, gb)] += w * dphi(a) * dphi(b);
                    advection[(ga, gb)] -= w * phi(b, s) * kh * dphi(a);
                }
            }
        }
    }
    Fem1dDense {
        mass,
        stiffness,
        advection,
    }
}

pub fn fem1d_semi_oracle(u: &[f64], k: &[f64], h: f64, d: f64, tau: f64) -> Vec<f64> {
    let m = fem1d_dense(k, h);
    let a = &m.mass + &m.stiffness * (d * tau) + &m.advection * tau;
    let rhs = &m.mass * DVector::from_column_slice(u);
    solve_dense(&a, rhs.as_slice())
}

pub fn fem1d_explicit_oracle(u: &[f64], k: &[f64], h: f64, d: f64, tau: f64) -> Vec<f64> {
    let m = fem1d_dense(k, h);
    let a = &m.mass + &m.stiffness * (d * tau);
    let uv = DVector::from_column_slice(u);
    let rhs = &m.mass * &uv - (&m.advection * &uv) * tau;
    solve_dense(&a, rhs.as_slice())
}

/// Dense P1 matrices on the periodic square mesh whose cells are split along
/// the `(i, j) - (i+1, j+1)` diagonal, integrated with the edge-midpoint rule
/// (exact for quadratics).
pub struct Fem2dDense {
    pub mass: DMatrix<f64>,
    pub stiffness: DMatrix<f64>,
    pub advection: DMatrix<f64>,
}

pub fn fem2d_dense(kx: &[f64], ky: &[f64], cells: usize, half_length: f64) -> Fem2dDense {
    let n = cells;
    let dim = n * n;
    let h = 2.0 * half_length / n as f64;
    let id = |i: usize, j: usize| (i % n) * n + (j % n);
    let mut mass = DMatrix::zeros(dim, dim);
    let mut stiffness = DMatrix::zeros(dim, dim);
    let mut advection = DMatrix::zeros(dim, dim);
    for i in 0..n {
        for j in 0..n {
            let (x0, y0) = (-half_length + i as f64 * h, -half_length + j as f64 * h);
            let corners = [
                (id(i, j), (x0, y0)),
                (id(i + 1, j), (x0 + h, y0)),
                (id(i + 1, j + 1), (x0 + h, y0 + h)),
                (id(i, j + 1), (x0, y0 + h)),
            ];
            for tri in [[0, 1, 2], [0, 2, 3]] {
                let v: Vec<(usize, (f64, f64))> = tri.iter().map(|&t| corners[t]).collect();
                add_triangle(&v, kx, ky, &mut mass, &mut stiffness, &mut advection);
            }
        }
    }
    Fem2dDense {
        mass,
        stiffness,
        advection,
    }
}

fn add_triangle(
    v: &[(usize, (f64, f64))],
    kx: &[f64],
    ky: &[f64],
    mass: &mut DMatrix<f64>,
    stiffness: &mut DMatrix<f64>,
    advection: &mut DMatrix<f64>,
) {
    // Basis phi_a(p) = c_a + gx_a x + gy_a y from the 3x3 vandermonde inverse.
    let vand = DMatrix::from_fn(3, 3, |r, c| match c {
        0 => 1.0,
        1 => v[r].1 .0,
        _ => v[r].1 .1,
    });
    let coef = vand.try_inverse().expect("degenerate triangle");
    let area = 0.5 * ((v[1].1 .0 - v[0].1 .0) * (v[2].1 .1 - v[0].1 .1)
        - (v[2].1 .0 - v[0].1 .0) * (v[1].1 .1 - v[0].1 .1))
        .abs();
    let phi = |a: usize, p: (f64, f64)| coef[(0, a)] + coef[(1, a)] * p.0 + coef[(2, a)] * p.1;
    let grad = |a: usize| (coef[(1, a)], coef[(2, a)]);
    let mids = [(0, 1), (1, 2), (2, 0)].map(|(a, b)| {
        (
            0.5 * (v[a].1 .0 + v[b].1 .0),
            0.5 * (v[a].1 .1 + v[b].1 .1),
        )
    });
    for p in mids {
        let w = area / 3.0;
        let kxh: f64 = (0..3).map(|c| phi(c, p) * kx[v[c].0]).sum();
        let kyh: f64 = (0..3).map(|c| phi(c, p) * ky[v[c].0]).sum();
        for a in 0..3 {
            for b in 0..3 {
                let (ga, gb) = (v[a].0, v[b].0);
                let (ax, ay) = grad(a);
                let (bx, by) = grad(b);
                mass[(ga, gb)] += w * phi(a, p) * phi(b, p);
                stiffness[(ga, gb)] += w * (ax * bx + ay * by);
                advection[(ga, gb)] -= w * phi(b, p) * (kxh * ax + kyh * ay);
            }
        }
    }
}

pub fn fem2d_semi_oracle(
    u: &[f64],
    kx: &[f64],
    ky: &[f64],
    cells: usize,
    half_length: f64,
    d: f64,
    tau: f64,
) -> Vec<f64> {
    let m = fem2d_dense(kx, ky, cells, half_length);
    let a = &m.mass + &m.stiffness * (d * tau) + &m.advection * tau;
    let rhs = &m.mass * DVector::from_column_slice(u);
    solve_dense(&a, rhs.as_slice())
}

pub fn fem2d_explicit_oracle(
    u: &[f64],
    kx: &[f64],
    ky: &[f64],
    cells: usize,
    half_length: f64,
    d: f64,
    tau: f64,
) -> Vec<f64> {
    let m = fem2d_dense(kx, ky, cells, half_length);
    let a = &m.mass + &m.stiffness * (d * tau);
    let uv = DVector::from_column_slice(u);
    let rhs = &m.mass * &uv - (&m.advection * &uv) * tau;
    solve_dense(&a, rhs.as_slice())
}

/// `u (1 - u - v)` clipped to zero once `u + v >= 1`.
pub fn pressure(a: f64, b: f64) -> f64 {
    if a + b < 1.0 {
        a * (1.0 - a - b)
    } else {
        0.0
    }
}
