//! Parameter sweeps and iteration tables written as CSV and text.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;

use crate::cloners::{apply_local_cloning, apply_nonlocal_cloning};
use crate::entanglement::{input_state, measures};
use crate::error::{domain, Result};
use crate::iteration::{iterate, IterationTrace};
use crate::linalg::fidelity_pure;

pub const DEFAULT_POINTS: usize = 201;
pub const DEFAULT_STEPS: usize = 6;
pub const DEFAULT_ALPHA: f64 = std::f64::consts::FRAC_PI_4;
pub const DEFAULT_SEED: u64 = 20_021_118;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Sweep,
    Iterate,
    Verify,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub points: usize,
    pub steps: usize,
    pub alpha: f64,
    /// Destination for CSV output; `None` writes to stdout.
    pub output_path: Option<PathBuf>,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            points: DEFAULT_POINTS,
            steps: DEFAULT_STEPS,
            alpha: DEFAULT_ALPHA,
            output_path: None,
            seed: DEFAULT_SEED,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.points < 2 {
            return domain(format!("need at least 2 sweep points, got {}", self.points));
        }
        if self.steps < 1 {
            return domain("need at least 1 cloning step");
        }
        if !self.alpha.is_finite() {
            return domain("alpha must be finite");
        }
        Ok(())
    }
}

/// One grid point of the sweep over `cos α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub cos_alpha: f64,
    pub e3_input: f64,
    pub e3_local: f64,
    pub e3_nonlocal: f64,
    pub e2_input: f64,
    pub e2_local: f64,
    pub e2_nonlocal: f64,
    pub f_local: f64,
    pub f_nonlocal: f64,
}

pub const SWEEP_HEADER: [&str; 9] = [
    "cos_alpha",
    "e3_input",
    "e3_local",
    "e3_nonlocal",
    "e2_input",
    "e2_local",
    "e2_nonlocal",
    "f_local",
    "f_nonlocal",
];

impl SweepRow {
    /// Simulates both cloners on `cos α |000⟩ + sin α |111⟩`.
    pub fn compute(cos_alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&cos_alpha) {
            return domain(format!("cos alpha {cos_alpha} outside [0, 1]"));
        }
        let psi = input_state(cos_alpha.acos());
        let rho = psi.projector();
        let local = apply_local_cloning(&rho)?.into_state();
        let nonlocal = apply_nonlocal_cloning(&rho)?.into_state();
        let (m_in, m_loc, m_non) = (measures(&rho)?, measures(&local)?, measures(&nonlocal)?);
        Ok(Self {
            cos_alpha,
            e3_input: m_in.e3,
            e3_local: m_loc.e3,
            e3_nonlocal: m_non.e3,
            e2_input: m_in.e2_mean(),
            e2_local: m_loc.e2_mean(),
            e2_nonlocal: m_non.e2_mean(),
            f_local: fidelity_pure(&psi, &local)?,
            f_nonlocal: fidelity_pure(&psi, &nonlocal)?,
        })
    }
}

/// Uniform grid on `[0, 1]`, endpoints included.
pub fn cos_alpha_grid(points: usize) -> Vec<f64> {
    let last = (points - 1) as f64;
    (0..points).map(|i| i as f64 / last).collect()
}

pub fn sweep_rows(points: usize) -> Result<Vec<SweepRow>> {
    if points < 2 {
        return domain(format!("need at least 2 sweep points, got {points}"));
    }
    cos_alpha_grid(points)
        .into_iter()
        .map(SweepRow::compute)
        .collect()
}

/// Writes rows as CSV with a header line and `\n` terminators.
pub fn write_sweep_csv<W: Write>(out: W, rows: &[SweepRow]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Sweep CSV as bytes.
pub fn sweep_csv(points: usize) -> Result<Vec<u8>> {
    let rows = sweep_rows(points)?;
    let mut buf = Vec::new();
    write_sweep_csv(&mut buf, &rows)?;
    Ok(buf)
}

#[derive(Debug, Clone, Copy, Serialize)]
struct IterationCsvRow {
    step: usize,
    e3: f64,
    e2: f64,
}

pub fn write_iteration_csv<W: Write>(out: W, trace: &IterationTrace) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    for s in &trace.steps {
        w.serialize(IterationCsvRow {
            step: s.step,
            e3: s.e3,
            e2: s.e2,
        })?;
    }
    w.flush()?;
    Ok(())
}

/// Human-readable table: one column per step, rows `E3` and `E2`, four decimals.
pub fn iteration_table(trace: &IterationTrace) -> String {
    let mut out = String::new();
    let _ = write!(out, "{:<4}", "No");
    for s in &trace.steps {
        let _ = write!(out, " {:>7}", s.step);
    }
    out.push('\n');
    for (label, values) in [("E3", trace.e3()), ("E2", trace.e2())] {
        let _ = write!(out, "{label:<4}");
        for v in values {
            let _ = write!(out, " {v:>7.4}");
        }
        out.push('\n');
    }
    out
}

fn open_output(cfg: &RunConfig) -> Result<Box<dyn Write>> {
    Ok(match &cfg.output_path {
        Some(path) => Box::new(std::io::BufWriter::new(std::fs::File::create(path)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

/// Writes the sweep CSV to the configured output.
pub fn run_sweep(cfg: &RunConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let rows = sweep_rows(cfg.points)?;
    let mut out = open_output(cfg)?;
    write_sweep_csv(&mut out, &rows)?;
    out.flush()?;
    Ok(rows)
}

/// Prints the iteration table to stdout and writes the full-precision CSV
/// to the configured output (after the table when that is stdout too).
pub fn run_iterate(cfg: &RunConfig) -> Result<IterationTrace> {
    cfg.validate()?;
    let trace = iterate(cfg.alpha, cfg.steps)?;
    let table = iteration_table(&trace);
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(table.as_bytes())?;
    if cfg.output_path.is_none() {
        stdout.write_all(b"\n")?;
    }
    drop(stdout);
    let mut out = open_output(cfg)?;
    write_iteration_csv(&mut out, &trace)?;
    out.flush()?;
    Ok(trace)
}
