//! Simulation driver: builds the initial state from a [`SimConfig`], steps it,
//! and writes snapshots and diagnostics.

mod config;
mod output;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

pub use config::{AdvectionMode, InitialCondition, Model, Scheme, SimConfig};
pub use output::{format_time, snapshot_file_name, write_snapshot, DiagnosticsRow};

use crate::diagnostics::{cosine_similarity, is_oscillatory, min_max, total_mass};
use crate::error::{Error, Result};
use crate::fem1d::{fem_step, fem_step_explicit, FemParams};
use crate::fem2d::{build_mesh, FemOperators2D};
use crate::grid::{Field1D, Field2D};
use crate::ic::{gaussian_sum_ic, PerturbationSampler};
use crate::kernel::{compute_k_1d, compute_k_2d, NonlocalOperator1D, NonlocalOperator2D};
use crate::linalg::SolveOptions;
use crate::schemes1d::{fd_step, fv_step, SchemeCoefficients};

/// Population densities at the current time. One entry per species.
#[derive(Clone, Debug, PartialEq)]
pub enum State {
    Line(Vec<Field1D>),
    Plane(Vec<Field2D>),
}

impl State {
    pub fn species(&self) -> usize {
        match self {
            State::Line(f) => f.len(),
            State::Plane(f) => f.len(),
        }
    }

    /// Nodal values of species `s`.
    pub fn values(&self, s: usize) -> &[f64] {
        match self {
            State::Line(f) => f[s].values(),
            State::Plane(f) => f[s].values(),
        }
    }

    pub fn mass(&self, s: usize) -> f64 {
        match self {
            State::Line(f) => total_mass(&f[s]),
            State::Plane(f) => total_mass(&f[s]),
        }
    }
}

enum Engine {
    Line {
        op: NonlocalOperator1D,
        coeffs: SchemeCoefficients,
    },
    Plane {
        op: NonlocalOperator2D,
        fem: FemOperators2D,
    },
}

/// A time-stepping run in memory.
pub struct Simulation {
    config: SimConfig,
    engine: Engine,
    state: State,
    step: usize,
}

impl Simulation {
    pub fn new(config: SimConfig) -> Result<Self> {
        config.validate()?;
        let species = match config.model {
            Model::Single => 1,
            Model::Two => 2,
        };
        let mut sampler = PerturbationSampler::new(config.seed);
        let (engine, state) = if config.dim == 1 {
            let grid = config.model_params().grid1d()?;
            let fields = match config.ic {
                InitialCondition::GaussianSum => vec![gaussian_sum_ic(grid)],
                InitialCondition::PerturbedConstant => (0..species)
                    .map(|_| sampler.field1d(grid, config.ic_base, config.ic_amplitude))
                    .collect(),
            };
            let engine = Engine::Line {
                op: NonlocalOperator1D::new(grid, config.radius, config.kernel)?,
                coeffs: SchemeCoefficients::new(config.diffusion, config.tau, grid.spacing()),
            };
            (engine, State::Line(fields))
        } else {
            let grid = config.model_params().grid2d()?;
            let fields = (0..species)
                .map(|_| sampler.field2d(grid, config.ic_base, config.ic_amplitude))
                .collect();
            let fem = FemOperators2D::new(build_mesh(grid), fem_params(&config)).with_solve_options(
                SolveOptions {
                    tol: config.solver_tol,
                    max_iter: 5000,
                },
            );
            let engine = Engine::Plane {
                op: NonlocalOperator2D::new(grid, config.radius, config.kernel, config.omega)?,
                fem,
            };
            (engine, State::Plane(fields))
        };
        Ok(Self {
            config,
            engine,
            state,
            step: 0,
        })
    }

    /// Starts from a given state instead of the configured initial condition.
    pub fn with_state(mut self, state: State) -> Result<Self> {
        let ok = match (&self.state, &state) {
            (State::Line(a), State::Line(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.grid() == y.grid())
            }
            (State::Plane(a), State::Plane(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.grid() == y.grid())
            }
            _ => false,
        };
        if !ok {
            return Err(Error::config("state", "state does not match the configured model and grid"));
        }
        self.state = state;
        self.step = 0;
        Ok(self)
    }

    pub fn config(&self) -> &SimConfig {
        &self.config
    }

    pub fn state(&self) -> &State {
        &self.state
    }

    pub fn step_index(&self) -> usize {
        self.step
    }

    pub fn time(&self) -> f64 {
        self.step as f64 * self.config.tau
    }

    /// Advances one time step. The state is left unchanged on error.
    pub fn advance(&mut self) -> Result<()> {
        let cfg = &self.config;
        let interaction = cfg.interaction();
        let fem = fem_params(cfg);
        let explicit = cfg.advection == AdvectionMode::Explicit;
        let next = match (&self.engine, &self.state) {
            (Engine::Line { op, coeffs }, State::Line(fields)) => {
                let k = compute_k_1d(op, &fields[0], fields.get(1), interaction)?;
                let next = fields
                    .iter()
                    .zip(&k)
                    .map(|(u, k)| match (cfg.scheme, explicit) {
                        (Scheme::Fd, _) => fd_step(u, k, *coeffs),
                        (Scheme::Fv, _) => fv_step(u, k, *coeffs),
                        (Scheme::Fem, false) => fem_step(u, k, fem),
                        (Scheme::Fem, true) => fem_step_explicit(u, k, fem),
                    })
                    .collect::<Result<Vec<_>>>()?;
                State::Line(next)
            }
            (Engine::Plane { op, fem: ops }, State::Plane(fields)) => {
                let k = compute_k_2d(op, &fields[0], fields.get(1), interaction)?;
                let solve = |u: &Field2D, k| {
                    if explicit {
                        ops.step_explicit(u, k)
                    } else {
                        ops.step(u, k)
                    }
                };
                let next = if fields.len() == 2 {
                    let (a, b) = std::thread::scope(|s| {
                        let first = s.spawn(|| solve(&fields[0], &k[0]));
                        let second = solve(&fields[1], &k[1]);
                        (first.join().expect("solver thread panicked"), second)
                    });
                    vec![a?, b?]
                } else {
                    vec![solve(&fields[0], &k[0])?]
                };
                State::Plane(next)
            }
            _ => unreachable!("engine and state dimensions always agree"),
        };
        let step = self.step + 1;
        for s in 0..next.species() {
            if let Some(index) = next.values(s).iter().position(|x| !x.is_finite()) {
                return Err(Error::NonFinite { step, index });
            }
        }
        self.state = next;
        self.step = step;
        Ok(())
    }

    /// Advances until `step_index() == step`.
    pub fn advance_to(&mut self, step: usize) -> Result<()> {
        while self.step < step {
            self.advance()?;
        }
        Ok(())
    }

    /// Diagnostics of the current state.
    pub fn diagnostics(&self) -> Result<DiagnosticsRow> {
        let species = self.state.species();
        let mut row = DiagnosticsRow {
            step: self.step,
            time: self.time(),
            mass: Vec::with_capacity(species),
            min: Vec::with_capacity(species),
            max: Vec::with_capacity(species),
            oscillatory: Vec::with_capacity(species),
            similarity: None,
        };
        for s in 0..species {
            let values = self.state.values(s);
            let (lo, hi) = min_max(values);
            row.mass.push(self.state.mass(s));
            row.min.push(lo);
            row.max.push(hi);
            row.oscillatory.push(is_oscillatory(values, None));
        }
        if species == 2 {
            row.similarity = Some(cosine_similarity(self.state.values(0), self.state.values(1))?);
        }
        Ok(row)
    }

    /// Writes the current state as a snapshot file in `dir`.
    pub fn write_snapshot(&self, dir: &Path) -> Result<PathBuf> {
        let path = dir.join(snapshot_file_name(self.time()));
        let mut w = BufWriter::new(File::create(&path)?);
        write_snapshot(&mut w, &self.state)?;
        w.flush()?;
        Ok(path)
    }
}

fn fem_params(cfg: &SimConfig) -> FemParams {
    FemParams {
        diffusion: cfg.diffusion,
        tau: cfg.tau,
    }
}

/// What a completed [`run`] produced.
#[derive(Clone, Debug)]
pub struct RunSummary {
    pub steps: usize,
    pub snapshots: Vec<PathBuf>,
    pub diagnostics: PathBuf,
    /// Last diagnostics row (at `t_end`).
    pub last: DiagnosticsRow,
}

/// Runs `config` to `t_end`, writing `snap_t*.csv` files at the snapshot
/// times and `diagnostics.csv` into `dir` (created if needed).
///
/// On a mid-run failure the diagnostics written so far are flushed before the
/// error is returned.
pub fn run(config: &SimConfig, dir: &Path) -> Result<RunSummary> {
    config.validate()?;
    let snapshot_steps = config.snapshot_steps()?;
    let total = config.total_steps();
    let mut sim = Simulation::new(config.clone())?;
    std::fs::create_dir_all(dir)?;
    let diagnostics = dir.join("diagnostics.csv");
    let mut diag = BufWriter::new(File::create(&diagnostics)?);
    DiagnosticsRow::write_header(&mut diag, sim.state().species())?;

    let mut snapshots = Vec::with_capacity(snapshot_steps.len());
    let mut next_snapshot = snapshot_steps.iter().peekable();
    let stride = config.diagnostics_stride;
    let result = (|| -> Result<DiagnosticsRow> {
        loop {
            let n = sim.step_index();
            let is_snapshot = next_snapshot.peek().is_some_and(|&&s| s == n);
            let mut last = None;
            if is_snapshot || n % stride == 0 || n == total {
                let row = sim.diagnostics()?;
                row.write(&mut diag)?;
                last = Some(row);
            }
            if is_snapshot {
                snapshots.push(sim.write_snapshot(dir)?);
                next_snapshot.next();
            }
            if n == total {
                return Ok(last.expect("final row is always written"));
            }
            sim.advance()?;
        }
    })();
    diag.flush()?;
    let last = result?;
    Ok(RunSummary {
        steps: total,
        snapshots,
        diagnostics,
        last,
    })
}

/// A scheme variant in a comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchemeChoice {
    pub scheme: Scheme,
    pub advection: AdvectionMode,
}

impl SchemeChoice {
    pub const FD: Self = Self::semi(Scheme::Fd);
    pub const FV: Self = Self::semi(Scheme::Fv);
    pub const FEM: Self = Self::semi(Scheme::Fem);
    pub const FEM_EXPLICIT: Self = Self {
        scheme: Scheme::Fem,
        advection: AdvectionMode::Explicit,
    };

    const fn semi(scheme: Scheme) -> Self {
        Self {
            scheme,
            advection: AdvectionMode::SemiImplicit,
        }
    }

    /// `fd`, `fv`, `fem` or `fem_explicit`.
    pub fn name(self) -> &'static str {
        match (self.scheme, self.advection) {
            (Scheme::Fem, AdvectionMode::Explicit) => "fem_explicit",
            (s, _) => s.as_str(),
        }
    }
}

impl FromStr for SchemeChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fd" => Ok(Self::FD),
            "fv" => Ok(Self::FV),
            "fem" => Ok(Self::FEM),
            "fem_explicit" => Ok(Self::FEM_EXPLICIT),
            other => Err(Error::config("schemes", format!("unknown scheme '{other}'"))),
        }
    }
}

/// Distance between two schemes at one snapshot time. Distances are relative
/// to the first scheme's field.
#[derive(Clone, Debug, PartialEq)]
pub struct PairDistance {
    pub time: f64,
    pub first: SchemeChoice,
    pub second: SchemeChoice,
    pub rel_l2: f64,
    pub rel_linf: f64,
    pub first_oscillatory: bool,
    pub second_oscillatory: bool,
}

#[derive(Clone, Debug, Default)]
pub struct ComparisonReport {
    pub rows: Vec<PairDistance>,
}

impl ComparisonReport {
    pub fn find(&self, time: f64, first: SchemeChoice, second: SchemeChoice) -> Option<&PairDistance> {
        self.rows.iter().find(|r| {
            r.first == first && r.second == second && (r.time - time).abs() <= 1e-9 * time.max(1.0)
        })
    }

    pub fn write_csv<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "t,scheme_a,scheme_b,rel_l2,rel_linf,oscillatory_a,oscillatory_b")?;
        for r in &self.rows {
            writeln!(
                w,
                "{:.16e},{},{},{:.16e},{:.16e},{},{}",
                r.time,
                r.first.name(),
                r.second.name(),
                r.rel_l2,
                r.rel_linf,
                u8::from(r.first_oscillatory),
                u8::from(r.second_oscillatory)
            )?;
        }
        Ok(())
    }
}

/// Runs every scheme in `schemes` from the identical initial condition of
/// `config` and reports pairwise distances at each snapshot time. The
/// configured kernel backend is used for every scheme. Runs are independent
/// and execute concurrently.
pub fn compare_schemes(config: &SimConfig, schemes: &[SchemeChoice]) -> Result<ComparisonReport> {
    if config.model != Model::Single || config.dim != 1 {
        return Err(Error::config(
            "model/dim",
            "scheme comparison needs the 1D single-population model",
        ));
    }
    if schemes.is_empty() {
        return Err(Error::config("schemes", "no schemes given"));
    }
    let configs: Vec<SimConfig> = schemes
        .iter()
        .map(|c| SimConfig {
            scheme: c.scheme,
            advection: c.advection,
            ..config.clone()
        })
        .collect();
    for c in &configs {
        c.validate()?;
    }
    let steps = config.snapshot_steps()?;
    let results: Vec<Result<Vec<Vec<f64>>>> = std::thread::scope(|s| {
        let handles: Vec<_> = configs
            .iter()
            .map(|cfg| {
                let steps = &steps;
                s.spawn(move || -> Result<Vec<Vec<f64>>> {
                    let mut sim = Simulation::new(cfg.clone())?;
                    steps
                        .iter()
                        .map(|&n| {
                            sim.advance_to(n)?;
                            Ok(sim.state().values(0).to_vec())
                        })
                        .collect()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scheme thread panicked"))
            .collect()
    });
    let fields = results.into_iter().collect::<Result<Vec<_>>>()?;

    let mut report = ComparisonReport::default();
    for (t_idx, &n) in steps.iter().enumerate() {
        for a in 0..schemes.len() {
            for b in a + 1..schemes.len() {
                let (fa, fb) = (&fields[a][t_idx], &fields[b][t_idx]);
                let (rel_l2, rel_linf) = relative_distances(fa, fb);
                report.rows.push(PairDistance {
                    time: n as f64 * config.tau,
                    first: schemes[a],
                    second: schemes[b],
                    rel_l2,
                    rel_linf,
                    first_oscillatory: is_oscillatory(fa, None),
                    second_oscillatory: is_oscillatory(fb, None),
                });
            }
        }
    }
    Ok(report)
}

/// `(|a - b|_2 / |a|_2, |a - b|_inf / |a|_inf)`.
pub fn relative_distances(a: &[f64], b: &[f64]) -> (f64, f64) {
    let mut d2 = 0.0;
    let mut n2 = 0.0;
    let mut dinf = 0.0f64;
    let mut ninf = 0.0f64;
    for (x, y) in a.iter().zip(b) {
        let d = x - y;
        d2 += d * d;
        n2 += x * x;
        dinf = dinf.max(d.abs());
        ninf = ninf.max(x.abs());
    }
    let l2 = if n2 > 0.0 { (d2 / n2).sqrt() } else { d2.sqrt() };
    let linf = if ninf > 0.0 { dinf / ninf } else { dinf };
    (l2, linf)
}
