//! Command-line front end. Every subcommand prints a JSON summary on standard output,
//! a short human-readable line on standard error, and optionally writes CSV data
//! (`--out`) and an SVG plot (`--svg`).
//!
//! Exit codes: 0 on success (and for admissible curves in `check`), 2 for a valid but
//! inadmissible curve, 1 on any error.

use std::ffi::OsString;
use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::elastica::solve_boundary;
use crate::error::{Error, Result};
use crate::flow::{self, FlowConfig, FlowMonitors, Metric};
use crate::hyper::{BoundaryPoint, UnitTangent};
use crate::io::{read_boundary_json, read_curve_file, write_curve_file, write_table};
use crate::plot::{Plot, Scale, Series};
use crate::revsurf::{closed_willmore_energy, energy_report, read_boundary_data, BoundaryData, MIN_SAMPLES};
use crate::threshold::{admissibility, asymptotic_probe, closed_energy_of_cx, minimize_threshold, SCHLIERF_BOUND};

#[derive(Debug, Parser)]
#[command(name = "willmore", version, about = "Willmore energy thresholds for clamped surfaces of revolution")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Critical arc from the horizontal tangent at (0, alpha) to the axis point x.
    Elastica(ElasticaArgs),
    /// Willmore, elastic and closed energies of a profile curve.
    ProfileEnergy(ProfileArgs),
    /// Minimal closed energy over axis points for given boundary data.
    Threshold(ThresholdArgs),
    /// Closed energy of the two-arc configuration over a grid of axis points.
    ScanX(ScanArgs),
    /// Threshold for horizontal clamping over a log grid of alpha_plus.
    Sweep(SweepArgs),
    /// Discrete elastic flow of a clamped profile curve.
    Flow(FlowArgs),
    /// Admissibility of a profile curve against the threshold and against 8π.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct ElasticaArgs {
    #[arg(long)]
    pub alpha: f64,
    /// Axis point, a number or `inf`.
    #[arg(long, allow_hyphen_values = true)]
    pub x: BoundaryPoint,
    #[arg(long, default_value_t = 2048)]
    pub samples: usize,
    /// Sampled curve as CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    /// Curve CSV with header `s,x,y`.
    pub curve: PathBuf,
    /// Boundary data JSON; read from the curve's ends when omitted.
    #[arg(long)]
    pub boundary: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundaryArgs {
    #[arg(long, required_unless_present = "boundary", allow_hyphen_values = true)]
    pub alpha_minus: Option<f64>,
    #[arg(long, required_unless_present = "boundary", allow_hyphen_values = true)]
    pub alpha_plus: Option<f64>,
    /// Boundary data JSON with keys x_minus, x_plus, alpha_minus, alpha_plus,
    /// beta_minus, beta_plus; replaces the horizontal clamping.
    #[arg(long, conflicts_with_all = ["alpha_minus", "alpha_plus"])]
    pub boundary: Option<PathBuf>,
}

impl BoundaryArgs {
    fn data(&self) -> Result<BoundaryData> {
        let bd = match (&self.boundary, self.alpha_minus, self.alpha_plus) {
            (Some(p), _, _) => read_boundary_json(&std::fs::read_to_string(p)?)?,
            (None, Some(am), Some(ap)) => BoundaryData::horizontal(am, ap),
            _ => return Err(Error::InvalidParameter("need --alpha-minus and --alpha-plus or --boundary".into())),
        };
        bd.validate()?;
        Ok(bd)
    }
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    #[command(flatten)]
    pub boundary: BoundaryArgs,
}

/// `lo:hi:step`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRange {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl FromStr for GridRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected lo:hi:step, got `{s}`"));
        }
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
        let r = GridRange { lo: num(parts[0])?, hi: num(parts[1])?, step: num(parts[2])? };
        if !(r.lo.is_finite() && r.hi.is_finite() && r.step.is_finite()) {
            return Err("range bounds must be finite".into());
        }
        if !(r.step > 0.0) || r.hi < r.lo {
            return Err("need step > 0 and lo <= hi".into());
        }
        if (r.hi - r.lo) / r.step > 1e8 {
            return Err("range has too many points".into());
        }
        Ok(r)
    }
}

impl GridRange {
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|k| self.lo + k as f64 * self.step).collect()
    }
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub boundary: BoundaryArgs,
    /// Grid of axis points as lo:hi:step.
    #[arg(long, allow_hyphen_values = true)]
    pub range: GridRange,
    /// CSV with columns x, closed_energy.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub alpha_minus: f64,
    /// Smallest alpha_plus.
    #[arg(long, default_value_t = 1.0)]
    pub from: f64,
    /// Largest alpha_plus.
    #[arg(long, default_value_t = 1000.0)]
    pub to: f64,
    /// Number of log-spaced grid points.
    #[arg(long, default_value_t = 31)]
    pub points: usize,
    /// CSV with columns alpha_plus, inf_value.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MetricArg {
    Newton,
    Euclidean,
}

#[derive(Debug, Args)]
pub struct FlowArgs {
    /// Initial curve CSV; clamps are read from its ends.
    pub curve: PathBuf,
    #[arg(long, value_enum, default_value = "newton")]
    pub metric: MetricArg,
    #[arg(long)]
    pub max_steps: Option<usize>,
    #[arg(long)]
    pub grad_tol: Option<f64>,
    #[arg(long)]
    pub initial_step: Option<f64>,
    #[arg(long)]
    pub backtrack_factor: Option<f64>,
    #[arg(long)]
    pub armijo_c: Option<f64>,
    #[arg(long)]
    pub reparam_every: Option<usize>,
    /// Number of polyline segments (default: that of the input curve).
    #[arg(long)]
    pub resolution: Option<usize>,
    /// Terminal curve CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Monitor CSV with one row per accepted step.
    #[arg(long)]
    pub monitors: Option<PathBuf>,
    /// Energy against step.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub curve: PathBuf,
}

/// `v` as a multiple of π, e.g. `8.4π`.
pub fn fmt_pi(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    let s = format!("{:.6}", v / PI);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    format!("{s}π")
}

fn fmt_point(q: BoundaryPoint) -> String {
    match q {
        BoundaryPoint::Finite(x) => format!("{x}"),
        BoundaryPoint::Infinity => "inf".into(),
    }
}

fn point_json(q: BoundaryPoint) -> serde_json::Value {
    match q {
        BoundaryPoint::Finite(x) => json!(x),
        BoundaryPoint::Infinity => json!("inf"),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn write_svg(path: &Path, plot: &Plot) -> Result<()> {
    let mut f = create(path)?;
    f.write_all(plot.to_svg().as_bytes())?;
    f.flush()?;
    Ok(())
}

fn write_rows(path: &Path, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    let mut f = create(path)?;
    write_table(header, rows, &mut f)?;
    f.flush()?;
    Ok(())
}

fn print_json<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<()> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn check_samples(n: usize) -> Result<()> {
    if n < MIN_SAMPLES {
        return Err(Error::InvalidParameter(format!("need at least {MIN_SAMPLES} samples, got {n}")));
    }
    Ok(())
}

fn cmd_elastica(a: &ElasticaArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    if !(a.alpha > 0.0 && a.alpha.is_finite()) {
        return Err(Error::InvalidParameter(format!("alpha must be positive, got {}", a.alpha)));
    }
    check_samples(a.samples)?;
    let start = UnitTangent::from_angle(0.0, a.alpha, 0.0)?;
    let arc = solve_boundary(&start, a.x)?;
    let curve = arc.sample(a.samples)?;
    if let Some(p) = &a.out {
        write_curve_file(&curve, p)?;
    }
    if let Some(p) = &a.svg {
        let pts = curve.points().iter().map(|p| (p[0], p[1])).collect();
        write_svg(p, &Plot::new("critical arc", "x", "y").with_series(Series::new(arc.branch().name(), pts)))?;
    }
    print_json(
        out,
        &json!({
            "alpha": a.alpha,
            "x": point_json(a.x),
            "branch": arc.branch(),
            "s0": arc.s0(),
            "energy": arc.energy(),
            "singular_point": point_json(arc.singular_point()),
            "samples": curve.len(),
        }),
    )?;
    writeln!(err, "{} arc, s0 = {}, energy = {}", arc.branch().name(), arc.s0(), arc.energy())?;
    Ok(0)
}

fn cmd_profile(a: &ProfileArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let curve = read_curve_file(&a.curve)?;
    let bd = match &a.boundary {
        Some(p) => Some(read_boundary_json(&std::fs::read_to_string(p)?)?),
        None if curve.first()[1] > 0.0 && curve.last()[1] > 0.0 => Some(read_boundary_data(&curve)?),
        None => None,
    };
    let report = match bd {
        Some(bd) => closed_willmore_energy(&curve, &bd)?,
        None => energy_report(&curve)?,
    };
    print_json(out, &report)?;
    match report.closed_willmore {
        Some(c) => writeln!(err, "W_e = {}, closed = {}", fmt_pi(report.willmore), fmt_pi(c))?,
        None => writeln!(err, "W_e = {}", fmt_pi(report.willmore))?,
    }
    Ok(0)
}

fn cmd_threshold(a: &ThresholdArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let bd = a.boundary.data()?;
    let r = minimize_threshold(&bd)?;
    let mut report = serde_json::to_value(&r).map_err(|e| Error::Io(e.to_string()))?;
    report["value_over_pi"] = json!(r.value / PI);
    report["improvement"] = json!(r.improvement());
    print_json(out, &report)?;
    writeln!(
        err,
        "threshold {} at x* = {} (improvement over 8π: {})",
        fmt_pi(r.value),
        fmt_point(r.x_star),
        fmt_pi(r.improvement())
    )?;
    Ok(0)
}

fn cmd_scan(a: &ScanArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let bd = a.boundary.data()?;
    let xs = a.range.points();
    let mut rows = Vec::with_capacity(xs.len());
    for &x in &xs {
        rows.push(vec![x, closed_energy_of_cx(&bd, BoundaryPoint::Finite(x))?]);
    }
    let (kmin, _) = rows
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (k, r)| if r[1] < acc.1 { (k, r[1]) } else { acc });
    if let Some(p) = &a.out {
        write_rows(p, &["x", "closed_energy"], &rows)?;
    }
    if let Some(p) = &a.svg {
        let data = rows.iter().map(|r| (r[0], r[1] / PI)).collect();
        let (lo, hi) = (xs[0], xs[xs.len() - 1]);
        let plot = Plot::new("closed energy of c^x", "x", "energy / π")
            .with_series(Series::new("W_closed / π", data))
            .with_series(Series::new("12", vec![(lo, 12.0), (hi, 12.0)]).dashed())
            .with_series(Series::new("8", vec![(lo, 8.0), (hi, 8.0)]).dashed());
        write_svg(p, &plot)?;
    }
    let (first, last) = (&rows[0], &rows[rows.len() - 1]);
    print_json(
        out,
        &json!({
            "points": rows.len(),
            "grid_min_x": rows[kmin][0],
            "grid_min_value": rows[kmin][1],
            "first": {"x": first[0], "value": first[1]},
            "last": {"x": last[0], "value": last[1]},
        }),
    )?;
    writeln!(err, "{} points, grid minimum {} at x = {}", rows.len(), fmt_pi(rows[kmin][1]), rows[kmin][0])?;
    Ok(0)
}

/// `points` log-spaced values from `from` to `to`.
pub fn log_grid(from: f64, to: f64, points: usize) -> Result<Vec<f64>> {
    if !(from > 0.0 && from.is_finite() && to.is_finite() && to >= from) || points == 0 {
        return Err(Error::InvalidParameter(format!("bad log grid {from} .. {to} with {points} points")));
    }
    if points == 1 {
        if to != from {
            return Err(Error::InvalidParameter("a single grid point needs --from = --to".into()));
        }
        return Ok(vec![from]);
    }
    if to == from {
        return Err(Error::InvalidParameter("grid range is empty".into()));
    }
    let (l0, l1) = (from.ln(), to.ln());
    Ok((0..points)
        .map(|k| match k {
            0 => from,
            k if k == points - 1 => to,
            k => (l0 + (l1 - l0) * k as f64 / (points - 1) as f64).exp(),
        })
        .collect())
}

fn cmd_sweep(a: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    if !(a.alpha_minus > 0.0 && a.alpha_minus.is_finite()) {
        return Err(Error::InvalidParameter(format!("alpha_minus must be positive, got {}", a.alpha_minus)));
    }
    let grid = log_grid(a.from, a.to, a.points)?;
    let data = asymptotic_probe(a.alpha_minus, &grid)?;
    let rows: Vec<Vec<f64>> = data.iter().map(|&(ap, v)| vec![ap, v]).collect();
    if let Some(p) = &a.out {
        write_rows(p, &["alpha_plus", "inf_value"], &rows)?;
    }
    if let Some(p) = &a.svg {
        let mut plot = Plot::new(format!("threshold, alpha_minus = {}", a.alpha_minus), "alpha_plus", "energy / π")
            .with_series(Series::new("inf_x W_closed / π", data.iter().map(|&(x, v)| (x, v / PI)).collect()))
            .with_series(Series::new("10", vec![(a.from, 10.0), (a.to, 10.0)]).dashed());
        plot.x_scale = Scale::Log;
        write_svg(p, &plot)?;
    }
    let last = data[data.len() - 1];
    print_json(
        out,
        &json!({
            "alpha_minus": a.alpha_minus,
            "points": data.len(),
            "last": {"alpha_plus": last.0, "value": last.1, "value_over_pi": last.1 / PI},
        }),
    )?;
    writeln!(err, "alpha_plus = {}: threshold {}", last.0, fmt_pi(last.1))?;
    Ok(0)
}

fn cmd_flow(a: &FlowArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let curve = read_curve_file(&a.curve)?;
    let base = match a.metric {
        MetricArg::Newton => FlowConfig::default(),
        MetricArg::Euclidean => FlowConfig::euclidean(),
    };
    let cfg = FlowConfig {
        max_steps: a.max_steps.unwrap_or(base.max_steps),
        grad_tol: a.grad_tol.unwrap_or(base.grad_tol),
        initial_step: a.initial_step.unwrap_or(base.initial_step),
        backtrack_factor: a.backtrack_factor.unwrap_or(base.backtrack_factor),
        armijo_c: a.armijo_c.unwrap_or(base.armijo_c),
        reparam_every: a.reparam_every.unwrap_or(base.reparam_every),
        resolution: a.resolution.unwrap_or(curve.len() - 1),
        metric: match a.metric {
            MetricArg::Newton => Metric::Newton,
            MetricArg::Euclidean => Metric::Euclidean,
        },
    };
    let (state, mon) = flow::run(&curve, &cfg)?;
    if let Some(p) = &a.out {
        write_curve_file(&state.curve, p)?;
    }
    if let Some(p) = &a.monitors {
        write_rows(p, &FlowMonitors::HEADER, &mon.table())?;
    }
    if let Some(p) = &a.svg {
        let pts = mon.table().iter().map(|r| (r[0], r[1])).collect();
        write_svg(p, &Plot::new("discrete elastic flow", "step", "energy").with_series(Series::new("energy", pts)))?;
    }
    print_json(
        out,
        &json!({
            "steps": state.step_count,
            "converged": mon.converged,
            "stop_reason": mon.stop_reason,
            "initial_energy": mon.initial.energy,
            "energy": state.energy,
            "grad_norm": state.grad_norm,
            "max_hyp_length": mon.max_hyp_length(),
            "min_height": state.curve.min_height(),
            "config": cfg,
        }),
    )?;
    writeln!(
        err,
        "{} steps, energy {} -> {}, grad_norm {:e}{}",
        state.step_count,
        mon.initial.energy,
        state.energy,
        state.grad_norm,
        if mon.converged { "" } else { " (not converged)" }
    )?;
    Ok(0)
}

fn cmd_check(a: &CheckArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let curve = read_curve_file(&a.curve)?;
    let r = admissibility(&curve)?;
    print_json(out, &r)?;
    let ok = r.admissible_improved == Some(true);
    writeln!(
        err,
        "closed energy {} vs threshold {} (8π bound {}): {}",
        fmt_pi(r.curve_energy.unwrap_or(f64::NAN)),
        fmt_pi(r.value),
        fmt_pi(SCHLIERF_BOUND),
        if ok { "admissible" } else { "not admissible" }
    )?;
    Ok(if ok { 0 } else { 2 })
}

pub fn execute(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Elastica(a) => cmd_elastica(a, out, err),
        Command::ProfileEnergy(a) => cmd_profile(a, out, err),
        Command::Threshold(a) => cmd_threshold(a, out, err),
        Command::ScanX(a) => cmd_scan(a, out, err),
        Command::Sweep(a) => cmd_sweep(a, out, err),
        Command::Flow(a) => cmd_flow(a, out, err),
        Command::Check(a) => cmd_check(a, out, err),
    }
}

/// Parses `args` (including the program name) and runs the command; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 1 } else {
                let _ = write!(out, "{}", e.render());
                0
            };
        }
    };
    match execute(&cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
