//! Cyclic ("almost tridiagonal") systems arising from periodic 1D schemes.

use crate::error::{Error, Result};

/// Row `i` couples unknown `i` to `i - 1` (`lower[i]`), `i` (`diag[i]`) and
/// `i + 1` (`upper[i]`), indices modulo `N`. `lower[0]` and `upper[N - 1]`
/// are the periodic corner entries.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclicTridiagonal {
    pub lower: Vec<f64>,
    pub diag: Vec<f64>,
    pub upper: Vec<f64>,
}

impl CyclicTridiagonal {
    pub fn new(lower: Vec<f64>, diag: Vec<f64>, upper: Vec<f64>) -> Self {
        assert!(lower.len() == diag.len() && upper.len() == diag.len());
        Self { lower, diag, upper }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn mul(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                self.lower[i] * x[(i + n - 1) % n]
                    + self.diag[i] * x[i]
                    + self.upper[i] * x[(i + 1) % n]
            })
            .collect()
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.len();
        let mut a = vec![vec![0.0; n]; n];
        for i in 0..n {
            a[i][(i + n - 1) % n] += self.lower[i];
            a[i][i] += self.diag[i];
            a[i][(i + 1) % n] += self.upper[i];
        }
        a
    }

    /// Infinity norm (max absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        (0..self.len())
            .map(|i| self.lower[i].abs() + self.diag[i].abs() + self.upper[i].abs())
            .fold(0.0, f64::max)
    }
}

/// Thomas algorithm for a plain tridiagonal system. `sub[0]` and
/// `sup[n - 1]` are ignored.
pub fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut x = vec![0.0; n];
    let mut pivot = diag[0];
    if pivot == 0.0 || !pivot.is_finite() {
        return Err(Error::Singular { index: 0 });
    }
    x[0] = rhs[0] / pivot;
    for i in 1..n {
        c[i - 1] = sup[i - 1] / pivot;
        pivot = diag[i] - sub[i] * c[i - 1];
        if pivot == 0.0 || !pivot.is_finite() {
            return Err(Error::Singular { index: i });
        }
        x[i] = (rhs[i] - sub[i] * x[i - 1]) / pivot;
    }
    for i in (0..n - 1).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    Ok(x)
}

/// Solves a cyclic tridiagonal system by a Sherman-Morrison rank-one
/// correction around two Thomas solves.
pub fn solve_cyclic_tridiagonal(sys: &CyclicTridiagonal, rhs: &[f64]) -> Result<Vec<f64>> {
    let n = sys.len();
    if n < 3 {
        return Err(Error::config("N", format!("cyclic solve needs N >= 3, got {n}")));
    }
    assert_eq!(rhs.len(), n);
    let top_right = sys.lower[0];
    let bottom_left = sys.upper[n - 1];
    if top_right == 0.0 && bottom_left == 0.0 {
        return solve_tridiagonal(&sys.lower, &sys.diag, &sys.upper, rhs);
    }

    let gamma = -sys.diag[0];
    if gamma == 0.0 {
        return Err(Error::Singular { index: 0 });
    }
    let mut diag = sys.diag.clone();
    diag[0] -= gamma;
    diag[n - 1] -= bottom_left * top_right / gamma;

    let y = solve_tridiagonal(&sys.lower, &diag, &sys.upper, rhs)?;
    let mut corr = vec![0.0; n];
    corr[0] = gamma;
    corr[n - 1] = bottom_left;
    let z = solve_tridiagonal(&sys.lower, &diag, &sys.upper, &corr)?;

    let denom = 1.0 + z[0] + top_right * z[n - 1] / gamma;
    if denom == 0.0 || !denom.is_finite() {
        return Err(Error::Singular { index: n - 1 });
    }
    let factor = (y[0] + top_right * y[n - 1] / gamma) / denom;
    Ok(y.iter().zip(&z).map(|(a, b)| a - factor * b).collect())
}
