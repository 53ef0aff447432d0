//! Two adhering populations `u`, `v` and the sorting-regime classification.
//!
//! Each step evaluates `(K_u, K_v)` once from the time-`n` densities (both
//! species enter the population-pressure `g` functions at time `n`) and then
//! advances `u` and `v` by independent semi-implicit solves.

use std::fmt;
use std::str::FromStr;

use crate::diagnostics::cosine_similarity;
use crate::error::{Error, Result};
use crate::fem1d::{fem_step, FemParams};
use crate::fem2d::FemOperators2D;
use crate::grid::{Field1D, Field2D};
use crate::kernel::{compute_k_1d, compute_k_2d, Interaction, NonlocalOperator1D, NonlocalOperator2D};
use crate::params::TwoPopParams;

impl TwoPopParams {
    pub fn interaction(&self) -> Interaction {
        Interaction::Two {
            su: self.su,
            sv: self.sv,
            c: self.c,
        }
    }

    pub fn fem(&self) -> FemParams {
        FemParams {
            diffusion: self.diffusion,
            tau: self.tau,
        }
    }
}

/// One step of the 1D two-population FEM scheme.
pub fn twopop_step_1d(
    u: &Field1D,
    v: &Field1D,
    op: &NonlocalOperator1D,
    params: &TwoPopParams,
) -> Result<(Field1D, Field1D)> {
    let k = compute_k_1d(op, u, Some(v), params.interaction())?;
    let fem = params.fem();
    Ok((fem_step(u, &k[0], fem)?, fem_step(v, &k[1], fem)?))
}

/// One step of the 2D two-population FEM scheme. The two solves run on
/// separate threads.
pub fn twopop_step_2d(
    u: &Field2D,
    v: &Field2D,
    op: &NonlocalOperator2D,
    ops: &FemOperators2D,
    params: &TwoPopParams,
) -> Result<(Field2D, Field2D)> {
    let k = compute_k_2d(op, u, Some(v), params.interaction())?;
    let (next_u, next_v) = std::thread::scope(|s| {
        let hu = s.spawn(|| ops.step(u, &k[0]));
        let next_v = ops.step(v, &k[1]);
        (hu.join().expect("solver thread panicked"), next_v)
    });
    Ok((next_u?, next_v?))
}

/// Outcome of two-population sorting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegimeLabel {
    CompleteSorting,
    PartialEngulfment,
    /// `u` aggregates surrounded by `v`.
    EngulfmentUByV,
    Mixing,
}

impl RegimeLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::CompleteSorting => "complete_sorting",
            Self::PartialEngulfment => "partial_engulfment",
            Self::EngulfmentUByV => "engulfment_u_by_v",
            Self::Mixing => "mixing",
        }
    }

    /// Regime expected from the adhesion strengths alone. `None` when the
    /// strengths fall outside the four listed cases (e.g. `Su < C < Sv`).
    pub fn predicted(su: f64, sv: f64, c: f64) -> Option<Self> {
        if c == 0.0 {
            Some(Self::CompleteSorting)
        } else if c >= 0.5 * (su + sv) {
            Some(Self::Mixing)
        } else if c < su && c < sv {
            Some(Self::PartialEngulfment)
        } else if sv < c && c < su {
            Some(Self::EngulfmentUByV)
        } else {
            None
        }
    }
}

/// Statistics behind [`classify_regime`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegimeStats {
    /// Cosine similarity of `u` and `v`.
    pub similarity: f64,
    /// `ln R_uv / sqrt(ln R_uu ln R_vv)` with `R_ab = mean(a b) / (mean(a) mean(b))`:
    /// `+1` for proportional fields, negative when each population avoids
    /// the other's aggregates, `-inf` for disjoint supports. `NaN` if either
    /// field is uniform.
    pub segregation: f64,
    /// Share of `u`'s excess over its mean lying where `v` exceeds its mean.
    pub u_in_v: f64,
    /// Share of `v`'s excess over its mean lying where `u` exceeds its mean.
    pub v_in_u: f64,
}

impl RegimeStats {
    /// `u_in_v - v_in_u`: positive when `u` sits inside `v`-rich regions that
    /// extend beyond it, i.e. `v` wraps around `u`.
    pub fn asymmetry(&self) -> f64 {
        self.u_in_v - self.v_in_u
    }
}

/// Decision thresholds of [`classify_regime`], fixed by calibration runs of
/// the four reference parameter sets in 1D and 2D over several seeds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegimeThresholds {
    /// Mixing needs `similarity >= mixing_similarity`.
    pub mixing_similarity: f64,
    /// Largest `|asymmetry|` for the symmetric regimes.
    pub symmetric_asymmetry: f64,
    /// Engulfment needs `asymmetry >= engulfment_asymmetry`...
    pub engulfment_asymmetry: f64,
    /// ...and `segregation >= engulfment_segregation`.
    pub engulfment_segregation: f64,
    /// Complete sorting needs `segregation <= sorting_segregation`.
    pub sorting_segregation: f64,
    /// Partial engulfment needs `segregation` in `[partial_min, partial_max]`.
    pub partial_min: f64,
    pub partial_max: f64,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        Self {
            mixing_similarity: 0.9,
            symmetric_asymmetry: 0.1,
            engulfment_asymmetry: 0.15,
            engulfment_segregation: 0.5,
            sorting_segregation: -1.16,
            partial_min: -1.12,
            partial_max: 0.3,
        }
    }
}

/// Outcome of [`classify_regime`]. `label` is `None` when the statistics fall
/// between thresholds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegimeClassification {
    pub label: Option<RegimeLabel>,
    pub stats: RegimeStats,
}

impl fmt::Display for RegimeClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.label {
            Some(l) => f.write_str(l.as_str()),
            None => f.write_str("indeterminate"),
        }
    }
}

fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// Share of `a`'s positive excess over its mean found where `b > mean(b)`.
/// A field with no excess (uniform) counts as fully contained.
fn containment(a: &[f64], b: &[f64]) -> f64 {
    let (ma, mb) = (mean(a), mean(b));
    let mut inside = 0.0;
    let mut total = 0.0;
    for (&x, &y) in a.iter().zip(b) {
        let e = (x - ma).max(0.0);
        total += e;
        if y > mb {
            inside += e;
        }
    }
    if total > 0.0 {
        inside / total
    } else {
        1.0
    }
}

/// Computes the regime statistics of a final pair of nodal fields.
pub fn regime_stats(u: &[f64], v: &[f64]) -> Result<RegimeStats> {
    let similarity = cosine_similarity(u, v)?;
    let (mu, mv) = (mean(u), mean(v));
    if !(mu > 0.0 && mv > 0.0) {
        return Err(Error::Diagnostic("regime statistics need positive mean densities".into()));
    }
    let n = u.len() as f64;
    let cross = u.iter().zip(v).map(|(a, b)| a * b).sum::<f64>() / n / (mu * mv);
    let self_u = u.iter().map(|a| a * a).sum::<f64>() / n / (mu * mu);
    let self_v = v.iter().map(|b| b * b).sum::<f64>() / n / (mv * mv);
    let denom = (self_u.ln() * self_v.ln()).sqrt();
    let segregation = if denom > 1e-12 {
        cross.ln() / denom
    } else {
        f64::NAN
    };
    Ok(RegimeStats {
        similarity,
        segregation,
        u_in_v: containment(u, v),
        v_in_u: containment(v, u),
    })
}

/// Labels a final `(u, v)` pair with the default thresholds.
pub fn classify_regime(u: &[f64], v: &[f64]) -> Result<RegimeClassification> {
    classify_regime_with(u, v, &RegimeThresholds::default())
}

pub fn classify_regime_with(
    u: &[f64],
    v: &[f64],
    t: &RegimeThresholds,
) -> Result<RegimeClassification> {
    let stats = regime_stats(u, v)?;
    let a = stats.asymmetry();
    let g = stats.segregation;
    let symmetric = a.abs() <= t.symmetric_asymmetry;
    let label = if symmetric && stats.similarity >= t.mixing_similarity {
        Some(RegimeLabel::Mixing)
    } else if a >= t.engulfment_asymmetry && g >= t.engulfment_segregation {
        Some(RegimeLabel::EngulfmentUByV)
    } else if symmetric && g <= t.sorting_segregation {
        Some(RegimeLabel::CompleteSorting)
    } else if symmetric && (t.partial_min..=t.partial_max).contains(&g) {
        Some(RegimeLabel::PartialEngulfment)
    } else {
        None
    };
    Ok(RegimeClassification { label, stats })
}

impl fmt::Display for RegimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RegimeLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complete_sorting" => Ok(Self::CompleteSorting),
            "partial_engulfment" => Ok(Self::PartialEngulfment),
            "engulfment_u_by_v" => Ok(Self::EngulfmentUByV),
            "mixing" => Ok(Self::Mixing),
            other => Err(Error::config("regime", format!("unknown regime '{other}'"))),
        }
    }
}
