//! CSV output: snapshots and diagnostics rows.

use std::io::Write;

use super::State;
use crate::error::Result;

/// Time with 6 significant digits, `%g` style (`0.01`, `1.5`, `100`).
pub fn format_time(t: f64) -> String {
    if t == 0.0 {
        return "0".into();
    }
    let exp = t.abs().log10().floor() as i32;
    if !(-5..6).contains(&exp) {
        let s = format!("{t:.5e}");
        let (mantissa, e) = s.split_once('e').expect("exponent present");
        return format!("{}e{e}", trim_zeros(mantissa));
    }
    let decimals = (5 - exp).max(0) as usize;
    trim_zeros(&format!("{t:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn snapshot_file_name(t: f64) -> String {
    format!("snap_t{}.csv", format_time(t))
}

/// Header `x,u` / `x,u,v` (1D) or `x,y,u[,v]` (2D), one row per node in
/// storage order, values with 17 significant digits.
pub fn write_snapshot<W: Write>(w: &mut W, state: &State) -> Result<()> {
    let species = ["u", "v"];
    match state {
        State::Line(fields) => {
            writeln!(w, "x,{}", species[..fields.len()].join(","))?;
            let grid = fields[0].grid();
            for (i, x) in grid.nodes().into_iter().enumerate() {
                write!(w, "{x:.16e}")?;
                for f in fields {
                    write!(w, ",{:.16e}", f.values()[i])?;
                }
                writeln!(w)?;
            }
        }
        State::Plane(fields) => {
            writeln!(w, "x,y,{}", species[..fields.len()].join(","))?;
            let grid = fields[0].grid();
            for k in 0..grid.len() {
                let (i, j) = grid.coords(k);
                let (x, y) = grid.node(i as isize, j as isize);
                write!(w, "{x:.16e},{y:.16e}")?;
                for f in fields {
                    write!(w, ",{:.16e}", f.values()[k])?;
                }
                writeln!(w)?;
            }
        }
    }
    Ok(())
}

/// One line of `diagnostics.csv`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagnosticsRow {
    pub step: usize,
    pub time: f64,
    /// Per species.
    pub mass: Vec<f64>,
    pub min: Vec<f64>,
    pub max: Vec<f64>,
    pub oscillatory: Vec<bool>,
    /// Cosine similarity of `u` and `v` (two populations only).
    pub similarity: Option<f64>,
}

impl DiagnosticsRow {
    pub fn write_header<W: Write>(w: &mut W, species: usize) -> Result<()> {
        write!(w, "step,t")?;
        for s in ["u", "v"].iter().take(species) {
            write!(w, ",mass_{s},min_{s},max_{s},oscillatory_{s}")?;
        }
        if species == 2 {
            write!(w, ",similarity")?;
        }
        writeln!(w)?;
        Ok(())
    }

    pub fn write<W: Write>(&self, w: &mut W) -> Result<()> {
        write!(w, "{},{:.16e}", self.step, self.time)?;
        for s in 0..self.mass.len() {
            write!(
                w,
                ",{:.16e},{:.16e},{:.16e},{}",
                self.mass[s],
                self.min[s],
                self.max[s],
                u8::from(self.oscillatory[s])
            )?;
        }
        if let Some(sim) = self.similarity {
            write!(w, ",{sim:.16e}")?;
        }
        writeln!(w)?;
        Ok(())
    }
}
