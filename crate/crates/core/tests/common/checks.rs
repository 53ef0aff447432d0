//! Worst-case errors of library routines against the oracles in the parent
//! module. Shared by the focused tests and the acceptance target.

use nonlocal_core::fem1d::FemParams;
use nonlocal_core::kernel::{k_direct_1d, KernelMethod};
use nonlocal_core::{
    build_mesh, fd_step, fem_step, fem_step_explicit, fv_step, k_fft_1d, k_fft_2d, twopop_step_1d,
    twopop_step_2d, Field1D, Field2D, FemOperators2D, KernelWeight, NonlocalOperator1D,
    NonlocalOperator2D, PeriodicGrid1D, PeriodicGrid2D, SchemeCoefficients, TwoPopParams,
    VectorField2D,
};

use super::*;

/// Largest relative L-infinity error of `k_fft_1d` (and `k_direct_1d`)
/// against the brute-force periodic sum, over `fields` random fields per size.
pub fn kernel_1d_worst(sizes: &[usize], fields: usize, seed: u64) -> f64 {
    let mut r = rng(seed);
    let (half_length, radius, alpha) = (1.0, 0.3, 1.7);
    let mut worst = 0.0f64;
    for &n in sizes {
        let grid = PeriodicGrid1D::new(half_length, n).unwrap();
        for _ in 0..fields {
            let u = Field1D::new(grid, uniform(&mut r, n, -1.0, 1.0)).unwrap();
            let reference = oracle_k_1d(u.values(), half_length, radius, alpha);
            let fft = k_fft_1d(&u, alpha, radius).unwrap();
            let direct = k_direct_1d(&u, alpha, radius).unwrap();
            worst = worst
                .max(rel_inf(fft.values(), &reference))
                .max(rel_inf(direct.values(), &reference));
        }
    }
    worst
}

/// Same for `k_fft_2d` (ball-average weight) against the double sum.
pub fn kernel_2d_worst(sizes: &[usize], fields: usize, seed: u64) -> f64 {
    let mut r = rng(seed);
    let (half_length, radius, alpha) = (1.0, 0.3, 2.3);
    let weight = KernelWeight::BallAverage.value(radius);
    let mut worst = 0.0f64;
    for &n in sizes {
        let grid = PeriodicGrid2D::new(half_length, n).unwrap();
        for _ in 0..fields {
            let u = Field2D::new(grid, uniform(&mut r, n * n, -1.0, 1.0)).unwrap();
            let (rx, ry) = oracle_k_2d(u.values(), n, half_length, radius, alpha, weight);
            let k = k_fft_2d(&u, alpha, radius).unwrap();
            let mut got = k.x.clone();
            got.extend_from_slice(&k.y);
            let mut want = rx;
            want.extend_from_slice(&ry);
            worst = worst.max(rel_inf(&got, &want));
        }
    }
    worst
}

/// Worst relative error of each stepper against its dense oracle over
/// `trials` random `(u, K)` inputs on grids with at most 8 nodes per axis.
pub fn dense_oracle_worst(trials: usize, seed: u64) -> Vec<(&'static str, f64)> {
    let mut r = rng(seed);
    let mut worst = [0.0f64; 8];
    let half_length = 1.0;
    for t in 0..trials {
        let n = 4 + t % 5;
        let grid = PeriodicGrid1D::new(half_length, n).unwrap();
        let h = grid.spacing();
        let d = r.random_range(0.5..2.0);
        let tau = r.random_range(0.005..0.02);
        let u = Field1D::new(grid, uniform(&mut r, n, 0.0, 1.0)).unwrap();
        let k = Field1D::new(grid, uniform(&mut r, n, -3.0, 3.0)).unwrap();
        let coeffs = SchemeCoefficients::new(d, tau, h);
        let fem = FemParams { diffusion: d, tau };

        let fd = fd_step(&u, &k, coeffs).unwrap();
        worst[0] = worst[0].max(rel_inf(fd.values(), &solve_dense(&fd_dense(k.values(), h, d, tau), u.values())));
        let fv = fv_step(&u, &k, coeffs).unwrap();
        worst[1] = worst[1].max(rel_inf(fv.values(), &solve_dense(&fv_dense(k.values(), h, d, tau), u.values())));
        let semi = fem_step(&u, &k, fem).unwrap();
        worst[2] = worst[2].max(rel_inf(semi.values(), &fem1d_semi_oracle(u.values(), k.values(), h, d, tau)));
        let expl = fem_step_explicit(&u, &k, fem).unwrap();
        worst[3] = worst[3].max(rel_inf(expl.values(), &fem1d_explicit_oracle(u.values(), k.values(), h, d, tau)));

        // 2D at N = 4
        let n2 = 4;
        let grid2 = PeriodicGrid2D::new(half_length, n2).unwrap();
        let u2 = Field2D::new(grid2, uniform(&mut r, n2 * n2, 0.0, 1.0)).unwrap();
        let k2 = VectorField2D {
            x: uniform(&mut r, n2 * n2, -3.0, 3.0),
            y: uniform(&mut r, n2 * n2, -3.0, 3.0),
        };
        let ops = FemOperators2D::new(build_mesh(grid2), fem);
        let semi2 = ops.step(&u2, &k2).unwrap();
        let want = fem2d_semi_oracle(u2.values(), &k2.x, &k2.y, n2, half_length, d, tau);
        worst[4] = worst[4].max(rel_inf(semi2.values(), &want));
        let expl2 = ops.step_explicit(&u2, &k2).unwrap();
        let want = fem2d_explicit_oracle(u2.values(), &k2.x, &k2.y, n2, half_length, d, tau);
        worst[5] = worst[5].max(rel_inf(expl2.values(), &want));

        // Two populations: oracle kernel on the pressure terms, then the
        // dense FEM solve per species.
        let (su, sv, c) = (
            r.random_range(0.0..30.0),
            r.random_range(0.0..30.0),
            r.random_range(0.0..30.0),
        );
        let radius = 0.6;
        let params = TwoPopParams {
            diffusion: d,
            su,
            sv,
            c,
            radius,
            half_length,
            cells: n,
            tau,
            t_end: tau,
            seed: 0,
        };
        let v = Field1D::new(grid, uniform(&mut r, n, 0.0, 0.6)).unwrap();
        let u = Field1D::new(grid, uniform(&mut r, n, 0.0, 0.6)).unwrap();
        let op = NonlocalOperator1D::new(grid, radius, KernelMethod::Fft).unwrap();
        let (nu, nv) = twopop_step_1d(&u, &v, &op, &params).unwrap();
        let gu: Vec<f64> = u.values().iter().zip(v.values()).map(|(&a, &b)| pressure(a, b)).collect();
        let gv: Vec<f64> = u.values().iter().zip(v.values()).map(|(&a, &b)| pressure(b, a)).collect();
        let cu = oracle_k_1d(&gu, half_length, radius, 1.0);
        let cv = oracle_k_1d(&gv, half_length, radius, 1.0);
        let ku: Vec<f64> = cu.iter().zip(&cv).map(|(a, b)| su * a + c * b).collect();
        let kv: Vec<f64> = cv.iter().zip(&cu).map(|(a, b)| sv * a + c * b).collect();
        let wu = fem1d_semi_oracle(u.values(), &ku, h, d, tau);
        let wv = fem1d_semi_oracle(v.values(), &kv, h, d, tau);
        worst[6] = worst[6].max(rel_inf(nu.values(), &wu)).max(rel_inf(nv.values(), &wv));

        let params2 = TwoPopParams {
            cells: n2,
            ..params
        };
        let u2 = Field2D::new(grid2, uniform(&mut r, n2 * n2, 0.0, 0.6)).unwrap();
        let v2 = Field2D::new(grid2, uniform(&mut r, n2 * n2, 0.0, 0.6)).unwrap();
        let op2 = NonlocalOperator2D::new(grid2, radius, KernelMethod::Fft, KernelWeight::BallAverage).unwrap();
        let (nu2, nv2) = twopop_step_2d(&u2, &v2, &op2, &ops, &params2).unwrap();
        let weight = KernelWeight::BallAverage.value(radius);
        let gu: Vec<f64> = u2.values().iter().zip(v2.values()).map(|(&a, &b)| pressure(a, b)).collect();
        let gv: Vec<f64> = u2.values().iter().zip(v2.values()).map(|(&a, &b)| pressure(b, a)).collect();
        let (cux, cuy) = oracle_k_2d(&gu, n2, half_length, radius, 1.0, weight);
        let (cvx, cvy) = oracle_k_2d(&gv, n2, half_length, radius, 1.0, weight);
        let mix = |s: f64, a: &[f64], b: &[f64]| -> Vec<f64> { a.iter().zip(b).map(|(p, q)| s * p + c * q).collect() };
        let wu = fem2d_semi_oracle(u2.values(), &mix(su, &cux, &cvx), &mix(su, &cuy, &cvy), n2, half_length, d, tau);
        let wv = fem2d_semi_oracle(v2.values(), &mix(sv, &cvx, &cux), &mix(sv, &cvy, &cuy), n2, half_length, d, tau);
        worst[7] = worst[7].max(rel_inf(nu2.values(), &wu)).max(rel_inf(nv2.values(), &wv));
    }
    ["fd", "fv", "fem1d", "fem1d_explicit", "fem2d", "fem2d_explicit", "twopop_1d", "twopop_2d"]
        .into_iter()
        .zip(worst)
        .collect()
}
