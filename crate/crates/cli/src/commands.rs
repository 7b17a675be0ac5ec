//! Command-line interface.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qgchi_core::planner::{optimal_order, tail_bound_for};
use qgchi_core::spectrum::{secular_spectrum_count, validate_spectrum};
use qgchi_core::{
    optimal_plan, perturb_spectrum, recover, secular_spectrum, trace_check, von_below_spectrum, MetricGraph, NoiseModel,
    RecoveryPlan, Spectrum, TestFunction,
};

use crate::error::{CliError, Result};
use crate::experiment::{self, Delta, ExperimentConfig};
use crate::io::{read_spectrum, write_file, write_spectrum};
use crate::presets::{resolve_graph, Priors};

/// Largest denominator tried when subdividing to an equilateral graph.
const MAX_DENOMINATOR: u32 = 64;

#[derive(Debug, Parser)]
#[command(name = "qgchi", version, about = "Quantum graph spectra and Euler characteristic recovery")]
pub struct Cli {
    /// Seed for noise injection (noisy runs use seed, seed + 1, ...).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Target truncation error ε̄ for planning.
    #[arg(long, global = true, default_value_t = 0.25)]
    pub eps: f64,
    /// Output file (spectrum, perturb) or directory (experiment).
    #[arg(short, long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenfrequencies of a graph (JSON file or preset name) as CSV.
    Spectrum(SpectrumArgs),
    /// Optimal order, eigenfrequency count and noise tolerance.
    Plan(PriorArgs),
    /// Truncated trace sum and recovered Euler characteristic.
    Estimate(EstimateArgs),
    /// Adds uniform noise to a spectrum CSV.
    Perturb(PerturbArgs),
    /// Compares both sides of the trace formula.
    VerifyTrace(VerifyArgs),
    /// Writes experiment CSV/SVG files: a graph, `comparison` or `table`.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Secular,
    VonBelow,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    pub graph: String,
    #[arg(long, conflicts_with = "kmax", required_unless_present = "kmax")]
    pub count: Option<usize>,
    #[arg(long)]
    pub kmax: Option<f64>,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
}

#[derive(Debug, Args, Default)]
pub struct PriorArgs {
    /// Upper bound on the number of vertices.
    #[arg(long = "M")]
    pub max_vertices: Option<usize>,
    /// Upper bound on the total length.
    #[arg(long = "L")]
    pub max_length: Option<f64>,
    /// Lower bound on the shortest periodic orbit.
    #[arg(long)]
    pub lmin: Option<f64>,
    /// Read missing priors off this graph.
    #[arg(long)]
    pub graph: Option<String>,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[arg(long)]
    pub spectrum: PathBuf,
    /// Accuracy of spectrum files without a `tol` header.
    #[arg(long, default_value_t = 0.0)]
    pub tol: f64,
    #[arg(long, requires_all = ["d", "count"])]
    pub t: Option<f64>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long = "J")]
    pub count: Option<usize>,
    #[command(flatten)]
    pub priors: PriorArgs,
}

#[derive(Debug, Args)]
pub struct PerturbArgs {
    #[arg(long)]
    pub spectrum: PathBuf,
    #[arg(long)]
    pub delta: f64,
    #[arg(long, default_value_t = 0.0)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub graph: String,
    #[arg(long)]
    pub t: f64,
    /// Cosine-power order; omit with `--psi`.
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    /// Use the triangular test function.
    #[arg(long)]
    pub psi: bool,
    /// Number of eigenfrequencies on the spectral side.
    #[arg(long, default_value_t = 400, conflicts_with = "spectrum")]
    pub count: usize,
    /// Spectrum CSV instead of computing one.
    #[arg(long)]
    pub spectrum: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// `lasso`, `k5`, `k5-pendant`, `k33`, a graph file, `comparison` or `table`.
    pub target: String,
    #[arg(long, default_value_t = 100)]
    pub seeds: usize,
    /// Noise half-width, or `auto` for the plan's δ_max.
    #[arg(long, default_value = "auto")]
    pub delta: String,
}

/// Runs the CLI on `args`, writing reports to `stdout`; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return 2;
            }
            let _ = write!(stdout, "{}", e.render());
            return 0;
        }
    };
    match dispatch(&cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Spectrum(a) => cmd_spectrum(cli, a, out, err),
        Command::Plan(a) => cmd_plan(cli, a, out),
        Command::Estimate(a) => cmd_estimate(cli, a, out),
        Command::Perturb(a) => cmd_perturb(cli, a, out),
        Command::VerifyTrace(a) => cmd_verify(a, out),
        Command::Experiment(a) => cmd_experiment(cli, a, out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e))
}

fn emit_or_write(cli: &Cli, out: &mut dyn Write, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => write_file(path, text),
        None => emit(out, text),
    }
}

fn equilateral(g: &MetricGraph) -> Option<MetricGraph> {
    if g.common_length(1e-12).is_some() {
        return Some(g.clone());
    }
    g.equilateral_refinement(MAX_DENOMINATOR).ok()
}

fn von_below_count(g: &MetricGraph, count: usize) -> Result<Spectrum> {
    let k_max = (count + g.edge_count() + 1) as f64 * std::f64::consts::PI / g.total_length();
    Ok(von_below_spectrum(g, k_max)?.truncated(count)?)
}

pub fn compute_spectrum(g: &MetricGraph, count: Option<usize>, kmax: Option<f64>, method: MethodArg) -> Result<(Spectrum, Option<Spectrum>)> {
    let by = |f: &dyn Fn(&MetricGraph, f64) -> qgchi_core::Result<Spectrum>, c: &dyn Fn(&MetricGraph, usize) -> Result<Spectrum>, g: &MetricGraph| -> Result<Spectrum> {
        match (count, kmax) {
            (Some(n), _) => c(g, n),
            (None, Some(k)) => Ok(f(g, k)?),
            (None, None) => Err(CliError::input("one of --count or --kmax is required")),
        }
    };
    let secular = |g: &MetricGraph| by(&secular_spectrum, &|g, n| Ok(secular_spectrum_count(g, n)?), g);
    let von_below = |g: &MetricGraph| by(&von_below_spectrum, &von_below_count, g);
    match method {
        MethodArg::Secular => Ok((secular(g)?, None)),
        MethodArg::VonBelow => {
            let eq = equilateral(g).ok_or_else(|| CliError::input("graph has no equilateral subdivision"))?;
            Ok((von_below(&eq)?, None))
        }
        MethodArg::Auto => {
            let s = secular(g)?;
            let reference = match equilateral(g) {
                Some(eq) => Some(von_below_spectrum(&eq, s.k_max_covered().max(1e-9))?),
                None => None,
            };
            Ok((s, reference))
        }
    }
}

fn cmd_spectrum(cli: &Cli, a: &SpectrumArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let g = resolve_graph(&a.graph)?;
    let (s, reference) = compute_spectrum(&g, a.count, a.kmax, a.method)?;
    let report = validate_spectrum(&s, &g, reference.as_ref());
    for c in &report.checks {
        let status = if c.passed { "ok" } else if c.heuristic { "warn" } else { "FAIL" };
        let _ = writeln!(err, "{status} {}: {}", c.name, c.detail);
    }
    if !report.passed() {
        let names: Vec<&str> = report.failures().map(|c| c.name).collect();
        return Err(CliError::Violation(format!("spectrum validation failed: {}", names.join(", "))));
    }
    emit_or_write(cli, out, &write_spectrum(&s))
}

/// Priors from explicit flags, filling gaps from `--graph`.
fn priors(a: &PriorArgs) -> Result<Option<Priors>> {
    let from_graph = a.graph.as_deref().map(resolve_graph).transpose()?.map(|g| Priors::of(&g));
    let m = a.max_vertices.or(from_graph.map(|p| p.max_vertices));
    let l = a.max_length.or(from_graph.map(|p| p.max_length));
    let lmin = a.lmin.or(from_graph.map(|p| p.min_orbit_lower));
    match (m, l, lmin) {
        (Some(max_vertices), Some(max_length), Some(min_orbit_lower)) => {
            Ok(Some(Priors { max_vertices, max_length, min_orbit_lower }))
        }
        (None, None, None) => Ok(None),
        _ => Err(CliError::input("priors need all of --M, --L and --lmin (or --graph)")),
    }
}

fn planned(eps: f64, p: &Priors) -> Result<RecoveryPlan> {
    Ok(optimal_plan(eps, p.max_vertices, p.max_length, p.min_orbit_lower)?)
}

/// Note when the optimal order changes within 1% of `ρ`.
fn boundary_note(eps: f64, p: &Priors, plan: &RecoveryPlan) -> Option<String> {
    let rho = 2.0 * p.max_length / p.min_orbit_lower;
    let orders: Vec<u32> = [0.99, 1.01]
        .iter()
        .filter_map(|f| optimal_order(eps, p.max_vertices, rho * f).ok().map(|o| o.order))
        .collect();
    orders
        .iter()
        .any(|&d| d != plan.order)
        .then(|| format!("optimal order changes within 1% of rho (orders {orders:?} at 0.99 rho and 1.01 rho)"))
}

fn cmd_plan(cli: &Cli, a: &PriorArgs, out: &mut dyn Write) -> Result<()> {
    let p = priors(a)?.ok_or_else(|| CliError::input("plan needs --M, --L and --lmin, or --graph"))?;
    let plan = planned(cli.eps, &p)?;
    let mut text = plan.to_string();
    if let Some(note) = boundary_note(cli.eps, &p, &plan) {
        text.push_str(&format!("note={note}\n"));
    }
    emit(out, &text)
}

fn cmd_estimate(cli: &Cli, a: &EstimateArgs, out: &mut dyn Write) -> Result<()> {
    let s = read_spectrum(&a.spectrum, a.tol)?;
    let p = priors(&a.priors)?;
    let plan = match (a.t, a.d, a.count) {
        (Some(t), Some(d), Some(j)) => RecoveryPlan::manual(t, d, j)?,
        _ => planned(cli.eps, p.as_ref().ok_or_else(|| CliError::input("estimate needs --t/--d/--J or priors"))?)?,
    };
    let r = recover(&s, &plan)?;
    // tail bound plus the noise term, when M̄ and ℒ̄ are known
    let bound = p.and_then(|p| {
        let excess = plan.count as f64 - p.max_vertices as f64;
        tail_bound_for(&plan.test_function(), excess, p.max_length * plan.t).ok()
    });
    let bound = bound.map(|b| b + 2.0 * s.tol() * plan.count as f64 / plan.t);
    let mut text = plan.to_string();
    text.push_str(&format!("tol={:e}\nS={:e}\n", s.tol(), r.sum));
    match bound {
        Some(b) => text.push_str(&format!("bound={b:e}\ncertified={}\n", b < 0.5)),
        None => text.push_str("bound=unknown\n"),
    }
    text.push_str(&format!("chi_hat={}\n", r.chi));
    emit(out, &text)
}

fn cmd_perturb(cli: &Cli, a: &PerturbArgs, out: &mut dyn Write) -> Result<()> {
    let s = read_spectrum(&a.spectrum, a.tol)?;
    let noisy = perturb_spectrum(&s, &NoiseModel::new(a.delta, cli.seed)?);
    emit_or_write(cli, out, &write_spectrum(&noisy))
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<()> {
    let g = resolve_graph(&a.graph)?;
    let tf = if a.psi { TestFunction::Triangular } else { TestFunction::cosine_power(a.d)? };
    let s = match &a.spectrum {
        Some(path) => read_spectrum(path, 0.0)?,
        None => secular_spectrum_count(&g, a.count)?,
    };
    let c = trace_check(&g, &tf, a.t, &s)?;
    emit(
        out,
        &format!(
            "lhs={:e}\nrhs={:e}\ngap={:e}\nbound={:e}\nholds={}\n",
            c.lhs,
            c.rhs,
            c.gap,
            c.certified_bound,
            c.holds()
        ),
    )?;
    if !c.holds() {
        return Err(CliError::Violation(format!("trace gap {:e} exceeds bound {:e}", c.gap, c.certified_bound)));
    }
    Ok(())
}

fn cmd_experiment(cli: &Cli, a: &ExperimentArgs, out: &mut dyn Write) -> Result<()> {
    let delta = match a.delta.as_str() {
        "auto" => Delta::Auto,
        v => Delta::Value(v.parse().map_err(|_| CliError::input(format!("--delta: expected a number or `auto`, got `{v}`")))?),
    };
    let cfg = ExperimentConfig {
        eps_bar: cli.eps,
        seeds: a.seeds,
        delta,
        base_seed: cli.seed,
        out: cli.out.clone().unwrap_or_else(|| PathBuf::from("qgchi-out").join(&a.target)),
    };
    cfg.validate()?;
    match a.target.as_str() {
        "table" => {
            let rows = experiment::run_table(&cfg)?;
            emit(out, &experiment::table_csv(cfg.eps_bar, &rows))
        }
        "comparison" => {
            let r = experiment::run_comparison(&cfg)?;
            let mut text = format!("t={}\nJ={}\n", r.t, r.count);
            for (name, chi, sum) in &r.values {
                text.push_str(&format!("{name}: chi={chi} S={sum:e}\n"));
            }
            emit(out, &text)
        }
        target => {
            let g = resolve_graph(target)?;
            let report = experiment::run_graph(&g, Priors::of(&g), &cfg)?;
            emit(out, &report.to_text())?;
            match report.violation() {
                Some(v) => Err(CliError::Violation(v)),
                None => Ok(()),
            }
        }
    }
}
