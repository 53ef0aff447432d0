use crate::error::{Error, Result};

/// Density dependence `g` inside the interaction integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GFunction {
    /// `g(u, v) = u`.
    Identity,
    /// `u (1 - u - v)` where `u + v < 1`, else 0.
    PopulationPressureU,
    /// `v (1 - u - v)` where `u + v < 1`, else 0.
    PopulationPressureV,
}

impl GFunction {
    #[inline]
    pub fn eval(self, u: f64, v: f64) -> f64 {
        match self {
            GFunction::Identity => u,
            GFunction::PopulationPressureU => {
                let free = 1.0 - u - v;
                if u + v < 1.0 {
                    u * free
                } else {
                    0.0
                }
            }
            GFunction::PopulationPressureV => {
                let free = 1.0 - u - v;
                if u + v < 1.0 {
                    v * free
                } else {
                    0.0
                }
            }
        }
    }
}

/// Pointwise `g(u_i, v_i)`. The population-pressure variants need `v`.
pub fn apply_g(g: GFunction, u: &[f64], v: Option<&[f64]>) -> Result<Vec<f64>> {
    match (g, v) {
        (GFunction::Identity, _) => Ok(u.to_vec()),
        (_, None) => Err(Error::config(
            "model",
            format!("{g:?} needs the second population"),
        )),
        (_, Some(v)) => {
            if v.len() != u.len() {
                return Err(Error::config("field", "u and v lengths differ"));
            }
            Ok(u.iter().zip(v).map(|(&a, &b)| g.eval(a, b)).collect())
        }
    }
}
