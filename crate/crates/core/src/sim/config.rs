//! Run configuration: UTF-8 `key = value` lines, `#` comments, one flat
//! namespace, arrays as comma-separated values.
//!
//! ```text
//! model = single          # single | two
//! dim = 1                 # 1 | 2
//! scheme = fem            # fd | fv | fem (fd/fv: 1D single population only)
//! advection = semi_implicit   # semi_implicit | explicit (explicit: fem only)
//! kernel = fft            # fft | trapezoid | direct
//! omega = ball_average    # ball_average | unit (2D kernel magnitude)
//! ic = perturbed_constant # perturbed_constant | gaussian_sum
//! D = 1
//! alpha = 10
//! r = 1
//! L = 10
//! N = 1000
//! tau = 0.01
//! t_end = 10
//! seed = 1
//! snapshot_times = 0, 0.01, 0.5, 0.75, 1, 10
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::kernel::{Interaction, KernelMethod, KernelWeight, DIRECT_MAX_NODES};
use crate::params::{ModelParams, TwoPopParams};

macro_rules! keyword_enum {
    ($(#[$meta:meta])* $name:ident, $key:literal { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq)]
        pub enum $name { $($variant),+ }

        impl $name {
            pub fn as_str(self) -> &'static str {
                match self { $(Self::$variant => $text),+ }
            }
        }

        impl FromStr for $name {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($text => Ok(Self::$variant),)+
                    other => Err(Error::config($key, format!("unknown value '{other}'"))),
                }
            }
        }
    };
}

keyword_enum!(Model, "model" { Single => "single", Two => "two" });
keyword_enum!(Scheme, "scheme" { Fd => "fd", Fv => "fv", Fem => "fem" });
keyword_enum!(
    /// Treatment of the transport term.
    AdvectionMode, "advection" { SemiImplicit => "semi_implicit", Explicit => "explicit" }
);
keyword_enum!(InitialCondition, "ic" { PerturbedConstant => "perturbed_constant", GaussianSum => "gaussian_sum" });

#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub model: Model,
    pub dim: usize,
    pub scheme: Scheme,
    pub advection: AdvectionMode,
    pub kernel: KernelMethod,
    /// Magnitude of the 2D kernel; unused in 1D.
    pub omega: KernelWeight,
    pub ic: InitialCondition,
    pub diffusion: f64,
    pub alpha: f64,
    pub su: f64,
    pub sv: f64,
    pub c: f64,
    pub radius: f64,
    pub half_length: f64,
    pub cells: usize,
    pub tau: f64,
    pub t_end: f64,
    pub seed: u64,
    /// Base level of the perturbed-constant initial condition.
    pub ic_base: f64,
    /// Width of the uniform perturbation.
    pub ic_amplitude: f64,
    pub snapshot_times: Vec<f64>,
    /// Write a diagnostics row every this many steps (and at every snapshot).
    pub diagnostics_stride: usize,
    /// Relative residual for the 2D sparse solves.
    pub solver_tol: f64,
    pub output: Option<PathBuf>,
}

impl Default for SimConfig {
    /// The 1D single-population reference run with the FEM scheme.
    fn default() -> Self {
        let p = ModelParams::table1();
        Self {
            model: Model::Single,
            dim: 1,
            scheme: Scheme::Fem,
            advection: AdvectionMode::SemiImplicit,
            kernel: KernelMethod::Fft,
            omega: KernelWeight::BallAverage,
            ic: InitialCondition::PerturbedConstant,
            diffusion: p.diffusion,
            alpha: p.alpha,
            su: 0.0,
            sv: 0.0,
            c: 0.0,
            radius: p.radius,
            half_length: p.half_length,
            cells: p.cells,
            tau: p.tau,
            t_end: p.t_end,
            seed: p.seed,
            ic_base: 1.0,
            ic_amplitude: 1e-2,
            snapshot_times: vec![0.0, 0.01, 0.5, 0.75, 1.0, 10.0],
            diagnostics_stride: 1,
            solver_tol: 1e-14,
            output: None,
        }
    }
}

impl SimConfig {
    pub fn single_1d(params: ModelParams, scheme: Scheme) -> Self {
        let kernel = match scheme {
            Scheme::Fem => KernelMethod::Fft,
            Scheme::Fd | Scheme::Fv => KernelMethod::Trapezoid,
        };
        Self {
            scheme,
            kernel,
            diffusion: params.diffusion,
            alpha: params.alpha,
            radius: params.radius,
            half_length: params.half_length,
            cells: params.cells,
            tau: params.tau,
            t_end: params.t_end,
            seed: params.seed,
            snapshot_times: vec![0.0, params.t_end],
            ..Self::default()
        }
    }

    /// 2D single-population run. Uses the unit kernel weight: with
    /// `1 / (2 pi r^2)` the reference strength `alpha = 10` at density 0.2 is
    /// below the aggregation threshold and the state stays uniform.
    pub fn single_2d(params: ModelParams) -> Self {
        Self {
            dim: 2,
            omega: KernelWeight::Unit,
            ic_base: 0.2,
            snapshot_times: vec![0.0, 1.0, 1.5, 2.0, 10.0, 100.0],
            diagnostics_stride: 10,
            ..Self::single_1d(params, Scheme::Fem)
        }
    }

    pub fn two_pop(params: TwoPopParams, dim: usize) -> Self {
        Self {
            model: Model::Two,
            dim,
            scheme: Scheme::Fem,
            kernel: KernelMethod::Fft,
            diffusion: params.diffusion,
            su: params.su,
            sv: params.sv,
            c: params.c,
            radius: params.radius,
            half_length: params.half_length,
            cells: params.cells,
            tau: params.tau,
            t_end: params.t_end,
            seed: params.seed,
            ic_base: if dim == 1 { 0.2 } else { 0.1 },
            snapshot_times: vec![0.0, params.t_end],
            diagnostics_stride: 10,
            ..Self::default()
        }
    }

    pub fn model_params(&self) -> ModelParams {
        ModelParams {
            diffusion: self.diffusion,
            alpha: self.alpha,
            radius: self.radius,
            half_length: self.half_length,
            cells: self.cells,
            tau: self.tau,
            t_end: self.t_end,
            seed: self.seed,
        }
    }

    pub fn two_pop_params(&self) -> TwoPopParams {
        TwoPopParams {
            diffusion: self.diffusion,
            su: self.su,
            sv: self.sv,
            c: self.c,
            radius: self.radius,
            half_length: self.half_length,
            cells: self.cells,
            tau: self.tau,
            t_end: self.t_end,
            seed: self.seed,
        }
    }

    pub fn interaction(&self) -> Interaction {
        match self.model {
            Model::Single => Interaction::Single { alpha: self.alpha },
            Model::Two => Interaction::Two {
                su: self.su,
                sv: self.sv,
                c: self.c,
            },
        }
    }

    /// Number of time steps to reach `t_end`.
    pub fn total_steps(&self) -> usize {
        (self.t_end / self.tau).round() as usize
    }

    /// Step index of each snapshot time.
    pub fn snapshot_steps(&self) -> Result<Vec<usize>> {
        self.snapshot_times
            .iter()
            .map(|&t| step_of(t, self.tau).ok_or_else(|| {
                Error::config(
                    "snapshot_times",
                    format!("time {t} is not a multiple of tau = {}", self.tau),
                )
            }))
            .collect()
    }

    /// Enforces parameter ranges and the scheme/dim/model compatibility matrix.
    pub fn validate(&self) -> Result<()> {
        match self.model {
            Model::Single => self.model_params().validate()?,
            Model::Two => self.two_pop_params().validate()?,
        }
        if self.dim != 1 && self.dim != 2 {
            return Err(Error::config("dim", format!("must be 1 or 2, got {}", self.dim)));
        }
        if matches!(self.scheme, Scheme::Fd | Scheme::Fv) {
            if self.dim != 1 {
                return Err(Error::config(
                    "scheme/dim",
                    format!("scheme = {} is only available with dim = 1", self.scheme.as_str()),
                ));
            }
            if self.model != Model::Single {
                return Err(Error::config(
                    "scheme/model",
                    format!("scheme = {} is only available with model = single", self.scheme.as_str()),
                ));
            }
        }
        if self.advection == AdvectionMode::Explicit && self.scheme != Scheme::Fem {
            return Err(Error::config(
                "advection/scheme",
                "advection = explicit requires scheme = fem",
            ));
        }
        if self.kernel == KernelMethod::Trapezoid && (self.dim != 1 || self.model != Model::Single) {
            return Err(Error::config(
                "kernel/model",
                "kernel = trapezoid is only available for the 1D single-population model",
            ));
        }
        if self.kernel == KernelMethod::Direct {
            let nodes = self.cells.pow(self.dim as u32);
            if nodes > DIRECT_MAX_NODES * DIRECT_MAX_NODES.pow(self.dim as u32 - 1) {
                return Err(Error::config(
                    "kernel/N",
                    format!("kernel = direct is limited to N <= {DIRECT_MAX_NODES} per axis"),
                ));
            }
        }
        if self.ic == InitialCondition::GaussianSum && (self.dim != 1 || self.model != Model::Single) {
            return Err(Error::config(
                "ic/model",
                "ic = gaussian_sum is only defined for the 1D single-population model",
            ));
        }
        if !(self.ic_amplitude.is_finite() && self.ic_amplitude >= 0.0) {
            return Err(Error::config("ic_amplitude", "must be >= 0"));
        }
        if !self.ic_base.is_finite() {
            return Err(Error::config("ic_base", "must be finite"));
        }
        if self.diagnostics_stride == 0 {
            return Err(Error::config("diagnostics_stride", "must be >= 1"));
        }
        if !(self.solver_tol > 0.0 && self.solver_tol < 1.0) {
            return Err(Error::config("solver_tol", "must be in (0, 1)"));
        }
        if step_of(self.t_end, self.tau).is_none() {
            return Err(Error::config(
                "t_end",
                format!("t_end = {} is not a multiple of tau = {}", self.t_end, self.tau),
            ));
        }
        let total = self.total_steps();
        let steps = self.snapshot_steps()?;
        if let Some(&last) = steps.iter().max() {
            if last > total {
                return Err(Error::config("snapshot_times", "snapshot after t_end"));
            }
        }
        if steps.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::config("snapshot_times", "times must be strictly increasing"));
        }
        Ok(())
    }

    /// Parses a configuration file body. Unset keys keep their defaults;
    /// unknown keys are rejected.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::config(format!("line {}", lineno + 1), format!("expected 'key = value', got '{line}'"))
            })?;
            let key = key.trim().to_string();
            if entries.insert(key.clone(), value.trim().to_string()).is_some() {
                return Err(Error::config(key, "given more than once"));
            }
        }

        let mut cfg = Self::default();
        // Defaults that depend on other keys.
        let mut kernel_set = false;
        let mut base_set = false;
        let mut snapshots_set = false;
        for (key, value) in &entries {
            match key.as_str() {
                "model" => cfg.model = value.parse()?,
                "dim" => cfg.dim = parse_num(key, value)?,
                "scheme" => cfg.scheme = value.parse()?,
                "advection" => cfg.advection = value.parse()?,
                "kernel" => {
                    cfg.kernel = value.parse()?;
                    kernel_set = true;
                }
                "omega" => cfg.omega = value.parse()?,
                "ic" => cfg.ic = value.parse()?,
                "D" => cfg.diffusion = parse_num(key, value)?,
                "alpha" => cfg.alpha = parse_num(key, value)?,
                "Su" => cfg.su = parse_num(key, value)?,
                "Sv" => cfg.sv = parse_num(key, value)?,
                "C" => cfg.c = parse_num(key, value)?,
                "r" => cfg.radius = parse_num(key, value)?,
                "L" => cfg.half_length = parse_num(key, value)?,
                "N" => cfg.cells = parse_num(key, value)?,
                "tau" => cfg.tau = parse_num(key, value)?,
                "t_end" => cfg.t_end = parse_num(key, value)?,
                "seed" => cfg.seed = parse_num(key, value)?,
                "ic_base" => {
                    cfg.ic_base = parse_num(key, value)?;
                    base_set = true;
                }
                "ic_amplitude" => cfg.ic_amplitude = parse_num(key, value)?,
                "snapshot_times" => {
                    cfg.snapshot_times = value
                        .split(',')
                        .map(|s| parse_num(key, s.trim()))
                        .collect::<Result<_>>()?;
                    snapshots_set = true;
                }
                "diagnostics_stride" => cfg.diagnostics_stride = parse_num(key, value)?,
                "solver_tol" => cfg.solver_tol = parse_num(key, value)?,
                "output" => cfg.output = Some(PathBuf::from(value)),
                other => return Err(Error::config(other, "unknown key")),
            }
        }
        if !kernel_set && matches!(cfg.scheme, Scheme::Fd | Scheme::Fv) {
            cfg.kernel = KernelMethod::Trapezoid;
        }
        if !base_set {
            cfg.ic_base = match (cfg.model, cfg.dim) {
                (Model::Single, 1) => 1.0,
                (Model::Single, _) | (Model::Two, 1) => 0.2,
                (Model::Two, _) => 0.1,
            };
        }
        if !snapshots_set {
            cfg.snapshot_times = vec![0.0, cfg.t_end];
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config("config", format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Canonical text form; `parse(to_text())` gives back the same config.
    pub fn to_text(&self) -> String {
        let times: Vec<String> = self.snapshot_times.iter().map(|t| format!("{t}")).collect();
        let mut s = format!(
            "model = {}\ndim = {}\nscheme = {}\nadvection = {}\nkernel = {}\nomega = {}\nic = {}\n\
             D = {}\nalpha = {}\nSu = {}\nSv = {}\nC = {}\nr = {}\nL = {}\nN = {}\n\
             tau = {}\nt_end = {}\nseed = {}\nic_base = {}\nic_amplitude = {}\n\
             snapshot_times = {}\ndiagnostics_stride = {}\nsolver_tol = {}\n",
            self.model.as_str(),
            self.dim,
            self.scheme.as_str(),
            self.advection.as_str(),
            self.kernel.as_str(),
            self.omega.as_str(),
            self.ic.as_str(),
            self.diffusion,
            self.alpha,
            self.su,
            self.sv,
            self.c,
            self.radius,
            self.half_length,
            self.cells,
            self.tau,
            self.t_end,
            self.seed,
            self.ic_base,
            self.ic_amplitude,
            times.join(", "),
            self.diagnostics_stride,
            self.solver_tol,
        );
        if let Some(out) = &self.output {
            s.push_str(&format!("output = {}\n", out.display()));
        }
        s
    }
}

/// Step index `n` with `n tau == t` up to `1e-9` relative, if any.
fn step_of(t: f64, tau: f64) -> Option<usize> {
    if !(t.is_finite() && t >= 0.0) {
        return None;
    }
    let n = (t / tau).round();
    ((n * tau - t).abs() <= 1e-9 * t.abs().max(tau)).then_some(n as usize)
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::config(key, format!("cannot parse '{value}'")))
}
