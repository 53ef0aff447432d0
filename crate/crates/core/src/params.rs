//! Model and discretization parameters, with the reference parameter sets
//! used by the reproduction runs.

use crate::error::{Error, Result};
use crate::grid::{PeriodicGrid1D, PeriodicGrid2D};

/// Single-population aggregation-diffusion parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    /// Diffusion coefficient `D`.
    pub diffusion: f64,
    /// Interaction strength `alpha`.
    pub alpha: f64,
    /// Sensing radius `r`.
    pub radius: f64,
    /// Half-length `L` of the domain `[-L, L]`.
    pub half_length: f64,
    /// Cells per axis `N`.
    pub cells: usize,
    /// Time step `tau`.
    pub tau: f64,
    pub t_end: f64,
    pub seed: u64,
}

impl ModelParams {
    /// 1D reference run: D = 1, alpha = 10, r = 1, L = 10, N = 1000, tau = 0.01.
    pub fn table1() -> Self {
        Self {
            diffusion: 1.0,
            alpha: 10.0,
            radius: 1.0,
            half_length: 10.0,
            cells: 1000,
            tau: 0.01,
            t_end: 10.0,
            seed: 1,
        }
    }

    /// 2D reference run: D = 1, alpha = 10, r = 1, L = 2.5, N = 80, tau = 0.1.
    pub fn table2() -> Self {
        Self {
            diffusion: 1.0,
            alpha: 10.0,
            radius: 1.0,
            half_length: 2.5,
            cells: 80,
            tau: 0.1,
            t_end: 100.0,
            seed: 1,
        }
    }

    pub fn grid1d(&self) -> Result<PeriodicGrid1D> {
        PeriodicGrid1D::new(self.half_length, self.cells)
    }

    pub fn grid2d(&self) -> Result<PeriodicGrid2D> {
        PeriodicGrid2D::new(self.half_length, self.cells)
    }

    pub fn validate(&self) -> Result<()> {
        validate_common(
            self.diffusion,
            self.radius,
            self.half_length,
            self.cells,
            self.tau,
            self.t_end,
        )?;
        if !self.alpha.is_finite() {
            return Err(Error::config("alpha", "must be finite"));
        }
        Ok(())
    }
}

/// Two-population adhesion parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoPopParams {
    pub diffusion: f64,
    /// Self-adhesion of population `u`.
    pub su: f64,
    /// Self-adhesion of population `v`.
    pub sv: f64,
    /// Cross-adhesion between `u` and `v`.
    pub c: f64,
    pub radius: f64,
    pub half_length: f64,
    pub cells: usize,
    pub tau: f64,
    pub t_end: f64,
    pub seed: u64,
}

impl TwoPopParams {
    /// 1D two-population settings (D = 1, r = 1, L = 10, N = 1000,
    /// tau = 0.01, t_end = 20) with the given adhesion strengths. All four
    /// reference regimes have formed by t = 20.
    pub fn table3(su: f64, sv: f64, c: f64) -> Self {
        Self {
            diffusion: 1.0,
            su,
            sv,
            c,
            radius: 1.0,
            half_length: 10.0,
            cells: 1000,
            tau: 0.01,
            t_end: 20.0,
            seed: 1,
        }
    }

    /// 2D two-population settings (D = 1, r = 1, L = 2.5, N = 80,
    /// tau = 0.01, t_end = 10) with the given adhesion strengths.
    pub fn table4(su: f64, sv: f64, c: f64) -> Self {
        Self {
            diffusion: 1.0,
            su,
            sv,
            c,
            radius: 1.0,
            half_length: 2.5,
            cells: 80,
            tau: 0.01,
            t_end: 10.0,
            seed: 1,
        }
    }

    pub fn grid1d(&self) -> Result<PeriodicGrid1D> {
        PeriodicGrid1D::new(self.half_length, self.cells)
    }

    pub fn grid2d(&self) -> Result<PeriodicGrid2D> {
        PeriodicGrid2D::new(self.half_length, self.cells)
    }

    pub fn validate(&self) -> Result<()> {
        validate_common(
            self.diffusion,
            self.radius,
            self.half_length,
            self.cells,
            self.tau,
            self.t_end,
        )?;
        for (key, v) in [("Su", self.su), ("Sv", self.sv), ("C", self.c)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::config(key, format!("must be finite and >= 0, got {v}")));
            }
        }
        Ok(())
    }

    /// Parameters with the roles of `u` and `v` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            su: self.sv,
            sv: self.su,
            ..*self
        }
    }
}

fn validate_common(
    diffusion: f64,
    radius: f64,
    half_length: f64,
    cells: usize,
    tau: f64,
    t_end: f64,
) -> Result<()> {
    if !(diffusion.is_finite() && diffusion >= 0.0) {
        return Err(Error::config("D", format!("must be >= 0, got {diffusion}")));
    }
    if !(half_length.is_finite() && half_length > 0.0) {
        return Err(Error::config("L", format!("must be > 0, got {half_length}")));
    }
    if !(radius.is_finite() && radius > 0.0 && radius <= half_length) {
        return Err(Error::config("r", format!("need 0 < r <= L, got r = {radius}")));
    }
    if cells < 4 {
        return Err(Error::config("N", format!("need N >= 4, got {cells}")));
    }
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::config("tau", format!("must be > 0, got {tau}")));
    }
    if !(t_end.is_finite() && t_end >= 0.0) {
        return Err(Error::config("t_end", format!("must be >= 0, got {t_end}")));
    }
    let grid = PeriodicGrid1D::new(half_length, cells)?;
    if grid.cells_within(radius) < 1 {
        return Err(Error::config(
            "r",
            format!("radius {radius} is below one cell (h = {})", grid.spacing()),
        ));
    }
    Ok(())
}
