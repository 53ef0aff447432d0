//! Linear solvers for the per-step systems.

mod cyclic;
mod sparse;

pub use cyclic::{solve_cyclic_tridiagonal, solve_tridiagonal, CyclicTridiagonal};
pub use sparse::{solve_sparse, CsrMatrix, SolveOptions, SparseSystem};
