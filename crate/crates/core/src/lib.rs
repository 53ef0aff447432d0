//! Solvers for non-local aggregation-diffusion equations
//!
//! ```text
//! du/dt = D lap u - div(u K[u]),   K[u](x) = alpha int_{B_r} g(u(x+y)) w(|y|) y/|y| dy
//! ```
//!
//! on periodic 1D and 2D domains, for one population or two adhering
//! populations. Finite-difference, finite-volume and P1 finite-element
//! semi-implicit steppers are provided, with `K` evaluated by trapezoid
//! quadrature, direct summation or FFT circular convolution.

pub mod diagnostics;
pub mod error;
pub mod fem1d;
pub mod fem2d;
pub mod grid;
pub mod ic;
pub mod kernel;
pub mod linalg;
pub mod params;
pub mod schemes1d;
pub mod sim;
pub mod twopop;

pub use diagnostics::{cosine_similarity, total_mass};
pub use error::{Error, Result};
pub use fem1d::{fem_assemble, fem_rhs, fem_step, fem_step_explicit, FemParams};
pub use fem2d::{build_mesh, fem2d_step, FemOperators2D, PeriodicTriangulation};
pub use grid::{Field1D, Field2D, PeriodicGrid1D, PeriodicGrid2D};
pub use ic::{gaussian_sum_ic, perturbed_constant_ic, perturbed_constant_ic_2d};
pub use kernel::{
    apply_g, compute_k_1d, compute_k_2d, k_fft_1d, k_fft_2d, k_trapezoid_1d, GFunction,
    Interaction, KernelMethod, KernelWeight, NonlocalOperator1D, NonlocalOperator2D, VectorField2D,
};
pub use linalg::{solve_cyclic_tridiagonal, solve_sparse, CyclicTridiagonal};
pub use params::{ModelParams, TwoPopParams};
pub use schemes1d::{fd_step, fv_step, SchemeCoefficients};
pub use sim::{compare_schemes, run, SimConfig, Simulation};
pub use twopop::{
    classify_regime, regime_stats, twopop_step_1d, twopop_step_2d, RegimeClassification, RegimeLabel,
    RegimeStats, RegimeThresholds,
};
