//! P1 finite elements on a structured periodic triangulation of `[-L, L]^2`.
//!
//! Each grid cell `(i, j)` is split along its main diagonal into
//! `[(i,j), (i+1,j), (i+1,j+1)]` and `[(i,j), (i+1,j+1), (i,j+1)]`. The split
//! maps onto itself under `x <-> y`, so the discrete problem keeps that
//! symmetry exactly.
//!
//! The step solves `(M + D tau S + tau T(K^n)) u^{n+1} = M u^n` with
//! `T_ab = -int phi_b K_h . grad phi_a`, `K_h` the P1 interpolant of the
//! nodal velocity. All element integrals are evaluated exactly.

use crate::error::{Error, Result};
use crate::fem1d::FemParams;
use crate::grid::{Field2D, PeriodicGrid2D};
use crate::kernel::VectorField2D;
use crate::linalg::{solve_sparse, CsrMatrix, SolveOptions, SparseSystem};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Element {
    /// Periodic node ids.
    pub nodes: [usize; 3],
    /// Unwrapped vertex coordinates relative to the cell origin.
    pub vertices: [(f64, f64); 3],
}

impl Element {
    pub fn area(&self) -> f64 {
        let [(x0, y0), (x1, y1), (x2, y2)] = self.vertices;
        0.5 * ((x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0))
    }

    /// Constant gradients of the three barycentric basis functions.
    pub fn gradients(&self) -> [(f64, f64); 3] {
        let [(x0, y0), (x1, y1), (x2, y2)] = self.vertices;
        let a2 = 2.0 * self.area();
        [
            ((y1 - y2) / a2, (x2 - x1) / a2),
            ((y2 - y0) / a2, (x0 - x2) / a2),
            ((y0 - y1) / a2, (x1 - x0) / a2),
        ]
    }
}

#[derive(Clone, Debug)]
pub struct PeriodicTriangulation {
    grid: PeriodicGrid2D,
    elements: Vec<Element>,
}

impl PeriodicTriangulation {
    pub fn grid(&self) -> &PeriodicGrid2D {
        &self.grid
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn node_count(&self) -> usize {
        self.grid.len()
    }
}

/// Builds the triangulation; element order is cell-major then lower/upper.
pub fn build_mesh(grid: PeriodicGrid2D) -> PeriodicTriangulation {
    let n = grid.cells() as isize;
    let h = grid.spacing();
    let mut elements = Vec::with_capacity(2 * grid.len());
    for i in 0..n {
        for j in 0..n {
            let a = grid.index(i, j);
            let b = grid.index(i + 1, j);
            let c = grid.index(i + 1, j + 1);
            let d = grid.index(i, j + 1);
            elements.push(Element {
                nodes: [a, b, c],
                vertices: [(0.0, 0.0), (h, 0.0), (h, h)],
            });
            elements.push(Element {
                nodes: [a, c, d],
                vertices: [(0.0, 0.0), (h, h), (0.0, h)],
            });
        }
    }
    PeriodicTriangulation { grid, elements }
}

/// Precomputed mass and stiffness matrices plus the element-to-storage map
/// used to add the advection part each step.
#[derive(Clone, Debug)]
pub struct FemOperators2D {
    mesh: PeriodicTriangulation,
    params: FemParams,
    mass: CsrMatrix,
    stiffness: CsrMatrix,
    /// `M + D tau S`.
    diffusion: CsrMatrix,
    /// Storage slot of local entry `(a, b)` for each element.
    slots: Vec<[[usize; 3]; 3]>,
    solve: SolveOptions,
}

impl FemOperators2D {
    pub fn new(mesh: PeriodicTriangulation, params: FemParams) -> Self {
        let n = mesh.node_count();
        let mut mass = SparseSystem::new(n);
        let mut stiff = SparseSystem::new(n);
        for e in mesh.elements() {
            let area = e.area();
            let grads = e.gradients();
            for a in 0..3 {
                for b in 0..3 {
                    let m = if a == b { area / 6.0 } else { area / 12.0 };
                    let s = area * (grads[a].0 * grads[b].0 + grads[a].1 * grads[b].1);
                    mass.add(e.nodes[a], e.nodes[b], m);
                    stiff.add(e.nodes[a], e.nodes[b], s);
                }
            }
        }
        let mass = mass.to_csr();
        let stiffness = stiff.to_csr();
        let dt = params.diffusion * params.tau;
        let diffusion = mass.with_values(
            mass.values()
                .iter()
                .zip(stiffness.values())
                .map(|(m, s)| m + dt * s)
                .collect(),
        );
        let slots = mesh
            .elements()
            .iter()
            .map(|e| {
                let mut s = [[0; 3]; 3];
                for a in 0..3 {
                    for b in 0..3 {
                        s[a][b] = diffusion
                            .position(e.nodes[a], e.nodes[b])
                            .expect("element pair is in the pattern");
                    }
                }
                s
            })
            .collect();
        Self {
            mesh,
            params,
            mass,
            stiffness,
            diffusion,
            slots,
            solve: SolveOptions {
                tol: 1e-14,
                max_iter: 5000,
            },
        }
    }

    pub fn with_solve_options(mut self, solve: SolveOptions) -> Self {
        self.solve = solve;
        self
    }

    pub fn mesh(&self) -> &PeriodicTriangulation {
        &self.mesh
    }

    pub fn params(&self) -> FemParams {
        self.params
    }

    pub fn mass(&self) -> &CsrMatrix {
        &self.mass
    }

    pub fn stiffness(&self) -> &CsrMatrix {
        &self.stiffness
    }

    /// `M + D tau S`.
    pub fn diffusion_matrix(&self) -> &CsrMatrix {
        &self.diffusion
    }

    /// `tau T(K)` on the shared pattern.
    pub fn advection_matrix(&self, k: &VectorField2D) -> CsrMatrix {
        let mut values = vec![0.0; self.diffusion.nnz()];
        self.add_advection(k, self.params.tau, &mut values);
        self.diffusion.with_values(values)
    }

    fn add_advection(&self, k: &VectorField2D, scale: f64, values: &mut [f64]) {
        for (e, slot) in self.mesh.elements().iter().zip(&self.slots) {
            let area = e.area();
            let grads = e.gradients();
            let kx: [f64; 3] = e.nodes.map(|p| k.x[p]);
            let ky: [f64; 3] = e.nodes.map(|p| k.y[p]);
            let (sx, sy) = (kx.iter().sum::<f64>(), ky.iter().sum::<f64>());
            for b in 0..3 {
                // int phi_b K_h over the element
                let ix = area / 12.0 * (kx[b] + sx);
                let iy = area / 12.0 * (ky[b] + sy);
                for a in 0..3 {
                    values[slot[a][b]] -= scale * (grads[a].0 * ix + grads[a].1 * iy);
                }
            }
        }
    }

    /// Semi-implicit system matrix `M + D tau S + tau T(K)`.
    pub fn system_matrix(&self, k: &VectorField2D) -> CsrMatrix {
        let mut values = self.diffusion.values().to_vec();
        self.add_advection(k, self.params.tau, &mut values);
        self.diffusion.with_values(values)
    }

    fn check(&self, u: &Field2D, k: &VectorField2D) -> Result<()> {
        let n = self.mesh.node_count();
        if u.values().len() != n || k.x.len() != n || k.y.len() != n {
            return Err(Error::config("field", "field does not match the mesh"));
        }
        Ok(())
    }

    pub fn step(&self, u: &Field2D, k: &VectorField2D) -> Result<Field2D> {
        self.check(u, k)?;
        let a = self.system_matrix(k);
        let rhs = self.mass.mul_vec(u.values());
        let x = solve_sparse(&a, &rhs, Some(u.values()), self.solve)?;
        Field2D::new(*u.grid(), x)
    }

    /// `(M + D tau S) u^{n+1} = M u^n - tau T(K) u^n`.
    pub fn step_explicit(&self, u: &Field2D, k: &VectorField2D) -> Result<Field2D> {
        self.check(u, k)?;
        let t = self.advection_matrix(k).mul_vec(u.values());
        let rhs: Vec<f64> = self
            .mass
            .mul_vec(u.values())
            .into_iter()
            .zip(t)
            .map(|(m, t)| m - t)
            .collect();
        let x = solve_sparse(&self.diffusion, &rhs, Some(u.values()), self.solve)?;
        Field2D::new(*u.grid(), x)
    }

    /// `1^T M u`, equal to `h^2 sum(u)` on this mesh.
    pub fn weighted_mass(&self, u: &[f64]) -> f64 {
        self.mass.mul_vec(u).iter().sum()
    }
}

/// One semi-implicit step.
pub fn fem2d_step(u: &Field2D, k: &VectorField2D, ops: &FemOperators2D) -> Result<Field2D> {
    ops.step(u, k)
}
