//! Scalar diagnostics on density fields: mass, similarity between two
//! populations and a node-to-node oscillation indicator.

use crate::error::{Error, Result};
use crate::grid::{Field1D, Field2D};

/// Read-only view shared by 1D and 2D fields.
pub trait NodalField {
    fn nodal_values(&self) -> &[f64];
    /// Quadrature weight of one node: `h` in 1D, `h^2` in 2D.
    fn node_weight(&self) -> f64;
}

impl NodalField for Field1D {
    fn nodal_values(&self) -> &[f64] {
        self.values()
    }
    fn node_weight(&self) -> f64 {
        self.grid().spacing()
    }
}

impl NodalField for Field2D {
    fn nodal_values(&self) -> &[f64] {
        self.values()
    }
    fn node_weight(&self) -> f64 {
        let h = self.grid().spacing();
        h * h
    }
}

/// `h * sum(u)` in 1D, `h^2 * sum(u)` in 2D.
pub fn total_mass<F: NodalField + ?Sized>(field: &F) -> f64 {
    field.node_weight() * field.nodal_values().iter().sum::<f64>()
}

/// `<u, v> / (|u| |v|)` over nodal values.
pub fn cosine_similarity(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::Diagnostic(format!(
            "length mismatch: {} vs {}",
            u.len(),
            v.len()
        )));
    }
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    let nu = u.iter().map(|a| a * a).sum::<f64>().sqrt();
    let nv = v.iter().map(|b| b * b).sum::<f64>().sqrt();
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::Diagnostic("cosine similarity of a zero field".into()));
    }
    Ok((dot / (nu * nv)).clamp(-1.0, 1.0))
}

pub fn min_max(values: &[f64]) -> (f64, f64) {
    values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
}

/// Undershoot below `-1e-3 * max(u)`.
pub fn has_undershoot(values: &[f64]) -> bool {
    let (lo, hi) = min_max(values);
    lo < -1e-3 * hi.max(0.0)
}

/// Number of strict sign changes of the periodic second difference
/// `u[i+1] - 2u[i] + u[i-1]`. Second differences below `1e-12` of the largest
/// one are rounding noise and are skipped.
pub fn curvature_sign_changes(values: &[f64]) -> usize {
    let n = values.len();
    if n < 3 {
        return 0;
    }
    let d2: Vec<f64> = (0..n)
        .map(|i| values[(i + 1) % n] - 2.0 * values[i] + values[(i + n - 1) % n])
        .collect();
    let floor = 1e-12 * d2.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    let signs: Vec<bool> = d2
        .iter()
        .filter(|d| d.abs() > floor)
        .map(|&d| d > 0.0)
        .collect();
    if signs.is_empty() {
        return 0;
    }
    let m = signs.len();
    (0..m).filter(|&i| signs[i] != signs[(i + 1) % m]).count()
}

/// Oscillation indicator for 1D fields.
///
/// A field is oscillatory if it undershoots below `-1e-3 * max(u)`, or if a
/// reference field (the semi-implicit solution at the same time) is given and
/// the field has more than three times as many curvature sign changes.
pub fn is_oscillatory(values: &[f64], reference: Option<&[f64]>) -> bool {
    if has_undershoot(values) {
        return true;
    }
    match reference {
        Some(r) => curvature_sign_changes(values) > 3 * curvature_sign_changes(r),
        None => false,
    }
}
