//! Sparse systems for the 2D finite-element steps: triplet assembly,
//! compressed-row storage and an ILU(0)-preconditioned BiCGSTAB solve.

use crate::error::{Error, Result};

/// Triplet-form system; duplicate entries accumulate.
#[derive(Clone, Debug, Default)]
pub struct SparseSystem {
    dim: usize,
    entries: Vec<(usize, usize, f64)>,
}

impl SparseSystem {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            entries: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add(&mut self, row: usize, col: usize, value: f64) {
        debug_assert!(row < self.dim && col < self.dim);
        self.entries.push((row, col, value));
    }

    pub fn to_csr(&self) -> CsrMatrix {
        CsrMatrix::from_triplets(self.dim, &self.entries)
    }
}

/// Square matrix in compressed-row form with sorted column indices.
#[derive(Clone, Debug, PartialEq)]
pub struct CsrMatrix {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    values: Vec<f64>,
}

impl CsrMatrix {
    pub fn from_triplets(dim: usize, entries: &[(usize, usize, f64)]) -> Self {
        let mut sorted = entries.to_vec();
        sorted.sort_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0; dim + 1];
        let mut cols = Vec::with_capacity(sorted.len());
        let mut values: Vec<f64> = Vec::with_capacity(sorted.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in sorted {
            if last == Some((r, c)) {
                *values.last_mut().unwrap() += v;
            } else {
                cols.push(c);
                values.push(v);
                row_ptr[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for i in 0..dim {
            row_ptr[i + 1] += row_ptr[i];
        }
        Self {
            dim,
            row_ptr,
            cols,
            values,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            row_ptr: (0..=dim).collect(),
            cols: (0..dim).collect(),
            values: vec![1.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[range.clone()].iter().copied().zip(self.values[range].iter().copied())
    }

    /// Position of entry `(row, col)` in the value array.
    pub fn position(&self, row: usize, col: usize) -> Option<usize> {
        let range = self.row_ptr[row]..self.row_ptr[row + 1];
        self.cols[range.clone()]
            .binary_search(&col)
            .ok()
            .map(|k| range.start + k)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// Same pattern, new values.
    pub fn with_values(&self, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), self.values.len());
        Self {
            values,
            ..self.clone()
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dim];
        self.mul_into(x, &mut y);
        y
    }

    fn mul_into(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            let mut s = 0.0;
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                s += self.values[k] * x[self.cols[k]];
            }
            *yi = s;
        }
    }

    /// `sum_i (A x)_i` computed column-wise: `sum_j x_j * colsum_j`.
    pub fn column_sums(&self) -> Vec<f64> {
        let mut s = vec![0.0; self.dim];
        for (k, &c) in self.cols.iter().enumerate() {
            s[c] += self.values[k];
        }
        s
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut a = vec![vec![0.0; self.dim]; self.dim];
        for (i, row) in a.iter_mut().enumerate() {
            for (c, v) in self.row(i) {
                row[c] = v;
            }
        }
        a
    }
}

/// Incomplete LU factorization with the sparsity pattern of `A`.
struct Ilu0 {
    lu: CsrMatrix,
    diag_pos: Vec<usize>,
}

impl Ilu0 {
    fn new(a: &CsrMatrix) -> Result<Self> {
        let n = a.dim;
        let mut lu = a.clone();
        let mut diag_pos = vec![usize::MAX; n];
        for (i, d) in diag_pos.iter_mut().enumerate() {
            *d = a.position(i, i).ok_or(Error::Singular { index: i })?;
        }
        let mut marker = vec![usize::MAX; n];
        for i in 0..n {
            let (start, end) = (lu.row_ptr[i], lu.row_ptr[i + 1]);
            for p in start..end {
                marker[lu.cols[p]] = p;
            }
            for p in start..end {
                let k = lu.cols[p];
                if k >= i {
                    break;
                }
                let pivot = lu.values[diag_pos[k]];
                if pivot == 0.0 {
                    return Err(Error::Singular { index: k });
                }
                lu.values[p] /= pivot;
                let lik = lu.values[p];
                for q in diag_pos[k] + 1..lu.row_ptr[k + 1] {
                    let m = marker[lu.cols[q]];
                    if m != usize::MAX {
                        lu.values[m] -= lik * lu.values[q];
                    }
                }
            }
            if lu.values[diag_pos[i]] == 0.0 {
                return Err(Error::Singular { index: i });
            }
            for p in start..end {
                marker[lu.cols[p]] = usize::MAX;
            }
        }
        Ok(Self { lu, diag_pos })
    }

    fn apply(&self, r: &[f64], z: &mut [f64]) {
        let lu = &self.lu;
        let n = lu.dim;
        for i in 0..n {
            let mut s = r[i];
            for p in lu.row_ptr[i]..self.diag_pos[i] {
                s -= lu.values[p] * z[lu.cols[p]];
            }
            z[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = z[i];
            for p in self.diag_pos[i] + 1..lu.row_ptr[i + 1] {
                s -= lu.values[p] * z[lu.cols[p]];
            }
            z[i] = s / lu.values[self.diag_pos[i]];
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveOptions {
    /// Target relative residual `|b - A x| / |b|`.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 2000,
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Solves `A x = b` to relative residual `opts.tol`, starting from `guess`
/// (zero if absent).
pub fn solve_sparse(a: &CsrMatrix, b: &[f64], guess: Option<&[f64]>, opts: SolveOptions) -> Result<Vec<f64>> {
    let n = a.dim;
    assert_eq!(b.len(), n);
    let bnorm = norm(b);
    if bnorm == 0.0 {
        return Ok(vec![0.0; n]);
    }
    let precond = Ilu0::new(a)?;
    let mut x = guess.map(<[f64]>::to_vec).unwrap_or_else(|| vec![0.0; n]);

    let mut ax = vec![0.0; n];
    a.mul_into(&x, &mut ax);
    let mut r: Vec<f64> = b.iter().zip(&ax).map(|(b, ax)| b - ax).collect();
    let mut shadow = r.clone();
    let mut p = vec![0.0; n];
    let mut v = vec![0.0; n];
    let mut p_hat = vec![0.0; n];
    let mut s_hat = vec![0.0; n];
    let mut s = vec![0.0; n];
    let mut t = vec![0.0; n];
    let (mut rho, mut alpha, mut omega) = (1.0, 1.0, 1.0);
    let mut residual = norm(&r) / bnorm;

    for iter in 0..opts.max_iter {
        if residual <= opts.tol {
            return Ok(x);
        }
        let rho_new = dot(&shadow, &r);
        if rho_new.abs() < 1e-300 {
            // breakdown: restart with the current residual as shadow vector
            shadow.copy_from_slice(&r);
            p.iter_mut().for_each(|e| *e = 0.0);
            v.iter_mut().for_each(|e| *e = 0.0);
            rho = 1.0;
            alpha = 1.0;
            omega = 1.0;
            if iter + 1 == opts.max_iter {
                break;
            }
            continue;
        }
        let beta = (rho_new / rho) * (alpha / omega);
        rho = rho_new;
        for i in 0..n {
            p[i] = r[i] + beta * (p[i] - omega * v[i]);
        }
        precond.apply(&p, &mut p_hat);
        a.mul_into(&p_hat, &mut v);
        let sv = dot(&shadow, &v);
        if sv == 0.0 {
            break;
        }
        alpha = rho / sv;
        for i in 0..n {
            s[i] = r[i] - alpha * v[i];
        }
        if norm(&s) / bnorm <= opts.tol {
            for i in 0..n {
                x[i] += alpha * p_hat[i];
            }
            residual = norm(&s) / bnorm;
            continue;
        }
        precond.apply(&s, &mut s_hat);
        a.mul_into(&s_hat, &mut t);
        let tt = dot(&t, &t);
        omega = if tt > 0.0 { dot(&t, &s) / tt } else { 0.0 };
        for i in 0..n {
            x[i] += alpha * p_hat[i] + omega * s_hat[i];
            r[i] = s[i] - omega * t[i];
        }
        residual = norm(&r) / bnorm;
        if omega == 0.0 {
            break;
        }
    }

    // Confirm against the true residual.
    a.mul_into(&x, &mut ax);
    let true_res = norm(&b.iter().zip(&ax).map(|(b, ax)| b - ax).collect::<Vec<_>>()) / bnorm;
    if true_res <= opts.tol {
        Ok(x)
    } else {
        Err(Error::NoConvergence {
            iterations: opts.max_iter,
            residual: true_res,
        })
    }
}
