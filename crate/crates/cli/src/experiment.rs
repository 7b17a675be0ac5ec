//! Experiment runs: sweeps over `t` and `J`, noisy recoveries, the
//! three-graph comparison at `J = 30` and the order table. Each panel is
//! written as a CSV with the plotted numbers and an SVG of the same stem.
//!
//! CSV layout: `# key=value` header lines (graph, χ, plan), then the columns
//! `t,J,S,abs_err,bound,seed,series`. `bound` is empty where the tail bound
//! is undefined and `seed` is empty for exact spectra.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use qgchi_core::planner::{optimal_order, tail_bound_for};
use qgchi_core::spectrum::secular_spectrum_count;
use qgchi_core::{
    admissible_error, optimal_plan, perturb_spectrum, truncated_sum, MetricGraph, NoiseModel, RecoveryPlan, Spectrum,
    TestFunction,
};
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::io::write_file;
use crate::plot::{Plot, Series};
use crate::presets::{Preset, Priors};

/// Noise half-width for the seed sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Delta {
    /// The plan's `δ_max = t/(8J)`.
    Auto,
    Value(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub eps_bar: f64,
    pub seeds: usize,
    pub delta: Delta,
    pub base_seed: u64,
    pub out: PathBuf,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.seeds == 0 {
            return Err(CliError::input("--seeds must be at least 1"));
        }
        if !(self.eps_bar > 0.0 && self.eps_bar < 1.0) {
            return Err(CliError::input("--eps must lie in (0, 1)"));
        }
        if let Delta::Value(d) = self.delta {
            if !(d >= 0.0) || !d.is_finite() {
                return Err(CliError::input("--delta must be finite and nonnegative"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub t: f64,
    pub count: usize,
    pub sum: f64,
    pub abs_err: f64,
    pub bound: Option<f64>,
    pub seed: Option<u64>,
    pub series: String,
}

pub fn rows_to_csv(header: &[(String, String)], rows: &[Row]) -> String {
    let mut out = String::new();
    for (k, v) in header {
        let _ = writeln!(out, "# {k}={v}");
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["t", "J", "S", "abs_err", "bound", "seed", "series"]).expect("in-memory write");
    for r in rows {
        w.write_record([
            format!("{:e}", r.t),
            r.count.to_string(),
            format!("{:e}", r.sum),
            format!("{:e}", r.abs_err),
            r.bound.map(|b| format!("{b:e}")).unwrap_or_default(),
            r.seed.map(|s| s.to_string()).unwrap_or_default(),
            r.series.clone(),
        ])
        .expect("in-memory write");
    }
    out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8"));
    out
}

/// One line per distinct series, x from `x`, y from `y`.
fn series_of(rows: &[Row], x: impl Fn(&Row) -> f64, y: impl Fn(&Row) -> f64) -> Vec<Series> {
    let mut out: Vec<Series> = Vec::new();
    for r in rows {
        match out.iter_mut().find(|s| s.label == r.series) {
            Some(s) => s.points.push((x(r), y(r))),
            None => out.push(Series::new(r.series.clone(), vec![(x(r), y(r))])),
        }
    }
    out
}

fn write_panel(dir: &Path, stem: &str, header: &[(String, String)], rows: &[Row], plot: Plot) -> Result<()> {
    write_file(&dir.join(format!("{stem}.csv")), &rows_to_csv(header, rows))?;
    write_file(&dir.join(format!("{stem}.svg")), &plot.to_svg())
}

fn plan_header(g: &MetricGraph, plan: &RecoveryPlan) -> Vec<(String, String)> {
    let mut h = vec![("graph".to_string(), g.name().to_string()), ("chi".into(), g.euler_characteristic().to_string())];
    for line in plan.to_string().lines() {
        if let Some((k, v)) = line.split_once('=') {
            h.push((k.into(), v.into()));
        }
    }
    h
}

/// Tail bound for `J` values at scaling `t`, when `J − M̄` is large enough.
fn bound_at(tf: &TestFunction, priors: &Priors, count: usize, t: f64) -> Option<f64> {
    let excess = count as f64 - priors.max_vertices as f64;
    tail_bound_for(tf, excess, priors.max_length * t).ok()
}

/// Outcome of the experiment on one graph.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphReport {
    pub graph: String,
    pub chi: i64,
    pub plan: RecoveryPlan,
    pub sum: f64,
    pub chi_hat: i64,
    pub bound: f64,
    pub delta: f64,
    /// Whether `δ` is inside the plan's noise guarantee.
    pub guaranteed: bool,
    /// `(seed, S_J(t), nint)` for every noisy run, in seed order.
    pub noisy: Vec<(u64, f64, i64)>,
}

impl GraphReport {
    pub fn abs_err(&self) -> f64 {
        (self.sum - self.chi as f64).abs()
    }

    pub fn correct(&self) -> usize {
        self.noisy.iter().filter(|r| r.2 == self.chi).count()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph={}", self.graph);
        let _ = writeln!(s, "chi={}", self.chi);
        s.push_str(&self.plan.to_string());
        let _ = writeln!(s, "S={:e}", self.sum);
        let _ = writeln!(s, "chi_hat={}", self.chi_hat);
        let _ = writeln!(s, "abs_err={:e}", self.abs_err());
        let _ = writeln!(s, "bound={:e}", self.bound);
        let _ = writeln!(s, "bound_over_error={:e}", self.bound / self.abs_err());
        let _ = writeln!(s, "delta={:e}", self.delta);
        let _ = writeln!(s, "delta_guaranteed={}", self.guaranteed);
        let _ = writeln!(s, "noisy_correct={}/{}", self.correct(), self.noisy.len());
        s
    }

    /// Exact or guaranteed noisy recoveries that missed `χ`.
    pub fn violation(&self) -> Option<String> {
        if self.chi_hat != self.chi {
            return Some(format!("{}: exact recovery gave {} instead of {}", self.graph, self.chi_hat, self.chi));
        }
        let wrong = self.noisy.len() - self.correct();
        (self.guaranteed && wrong > 0)
            .then(|| format!("{}: {wrong} of {} noisy recoveries missed chi = {}", self.graph, self.noisy.len(), self.chi))
    }
}

/// Runs every panel for one graph and writes them under `cfg.out`.
pub fn run_graph(g: &MetricGraph, priors: Priors, cfg: &ExperimentConfig) -> Result<GraphReport> {
    cfg.validate()?;
    let plan = optimal_plan(cfg.eps_bar, priors.max_vertices, priors.max_length, priors.min_orbit_lower)?;
    let chi = g.euler_characteristic();
    let (t0, j0) = (plan.t, plan.count);
    let tf = plan.test_function();
    let j_max = 3 * j0;
    let s = secular_spectrum_count(g, j_max)?;
    let delta = match cfg.delta {
        Delta::Auto => plan.delta_max,
        Delta::Value(d) => d,
    };
    let guaranteed = s.tol() + delta < admissible_error(&plan);
    let header = {
        let mut h = plan_header(g, &plan);
        h.push(("delta".into(), format!("{delta:e}")));
        h.push(("base_seed".into(), cfg.base_seed.to_string()));
        h
    };
    let dir = &cfg.out;
    let err = |sum: f64| (sum - chi as f64).abs();
    let row = |t: f64, count: usize, sum: f64, bound: Option<f64>, seed: Option<u64>, series: &str| Row {
        t,
        count,
        sum,
        abs_err: err(sum),
        bound,
        seed,
        series: series.to_string(),
    };

    let seeds: Vec<u64> = (0..cfg.seeds as u64).map(|i| cfg.base_seed.wrapping_add(i)).collect();
    let noisy_spectra: Vec<Spectrum> = seeds
        .par_iter()
        .map(|&seed| NoiseModel::new(delta, seed).map(|n| perturb_spectrum(&s, &n)))
        .collect::<qgchi_core::Result<_>>()?;

    // t ↦ S_J(t), exact and a few noisy overlays; the bound needs t >= t0
    // so that no periodic orbit is shorter than the support 1/t
    let t_grid: Vec<f64> = (4..=192).map(|i| t0 * f64::from(i) / 64.0).collect();
    let mut rows = Vec::new();
    for &t in &t_grid {
        let b = if t >= t0 { bound_at(&tf, &priors, j0, t) } else { None };
        rows.push(row(t, j0, truncated_sum(&s, &tf, t, j0)?, b, None, "exact"));
    }
    for (seed, ns) in seeds.iter().zip(&noisy_spectra).take(3) {
        for &t in &t_grid {
            let b = if t >= t0 { bound_at(&tf, &priors, j0, t).map(|b| b + 2.0 * delta * j0 as f64 / t) } else { None };
            rows.push(row(t, j0, truncated_sum(ns, &tf, t, j0)?, b, Some(*seed), &format!("noisy seed {seed}")));
        }
    }
    let plot = series_of(&rows, |r| r.t, |r| r.sum)
        .into_iter()
        .fold(Plot::new(format!("{}: S_J(t), J = {j0}", g.name()), "t", "S_J(t)"), |p, s| p.with(s));
    write_panel(dir, "t_sweep", &header, &rows, plot)?;

    // cosine powers against the triangular function, error in J at t0
    let mut rows = Vec::new();
    let candidates = [
        ("phi1", TestFunction::cosine_power(1)?),
        ("phi2", TestFunction::cosine_power(2)?),
        ("phi3", TestFunction::cosine_power(3)?),
        ("psi", TestFunction::Triangular),
    ];
    for (label, f) in &candidates {
        for j in priors.max_vertices + 1..=j_max {
            rows.push(row(t0, j, truncated_sum(&s, f, t0, j)?, bound_at(f, &priors, j, t0), None, label));
        }
    }
    let plot = series_of(&rows, |r| r.count as f64, |r| r.abs_err)
        .into_iter()
        .fold(Plot::new(format!("{}: |S_J - chi| by test function, t = {t0}", g.name()), "J", "|S_J(t) - chi|").log_y(), |p, s| p.with(s));
    write_panel(dir, "test_functions", &header, &rows, plot)?;

    // error and bound in t, from t0 on
    let rows: Vec<Row> = t_grid
        .iter()
        .filter(|&&t| t >= t0)
        .map(|&t| Ok(row(t, j0, truncated_sum(&s, &tf, t, j0)?, bound_at(&tf, &priors, j0, t), None, "error")))
        .collect::<Result<_>>()?;
    write_panel(dir, "error_vs_t", &header, &rows, error_plot(&rows, |r| r.t, format!("{}: error and bound, J = {j0}", g.name()), "t"))?;

    // error and bound in J at t0
    let rows: Vec<Row> = (priors.max_vertices + 1..=j_max)
        .map(|j| Ok(row(t0, j, truncated_sum(&s, &tf, t0, j)?, bound_at(&tf, &priors, j, t0), None, "error")))
        .collect::<Result<_>>()?;
    write_panel(dir, "error_vs_j", &header, &rows, error_plot(&rows, |r| r.count as f64, format!("{}: error and bound, t = {t0}", g.name()), "J"))?;

    // noisy recoveries at the plan point
    let noisy: Vec<(u64, f64, i64)> = seeds
        .par_iter()
        .zip(&noisy_spectra)
        .map(|(&seed, ns)| truncated_sum(ns, &tf, t0, j0).map(|sum| (seed, sum, qgchi_core::estimator::nint(sum))))
        .collect::<qgchi_core::Result<_>>()?;
    let noisy_bound = plan.noisy_bound(delta);
    let rows: Vec<Row> = noisy.iter().map(|&(seed, sum, _)| row(t0, j0, sum, noisy_bound, Some(seed), "noisy")).collect();
    let plot = Plot::new(format!("{}: S_J(t) per seed, delta = {delta:e}", g.name()), "seed", "S_J(t)")
        .with(Series::new("noisy", rows.iter().map(|r| (r.seed.unwrap() as f64, r.sum)).collect()));
    write_panel(dir, "recoveries", &header, &rows, plot)?;

    let sum = truncated_sum(&s, &tf, t0, j0)?;
    let report = GraphReport {
        graph: g.name().to_string(),
        chi,
        plan,
        sum,
        chi_hat: qgchi_core::estimator::nint(sum),
        bound: bound_at(&tf, &priors, j0, t0).unwrap_or(f64::INFINITY),
        delta,
        guaranteed,
        noisy,
    };
    write_file(&dir.join("summary.txt"), &report.to_text())?;
    Ok(report)
}

fn error_plot(rows: &[Row], x: impl Fn(&Row) -> f64, title: String, x_label: &str) -> Plot {
    Plot::new(title, x_label, "|S_J(t) - chi|")
        .log_y()
        .with(Series::new("error", rows.iter().map(|r| (x(r), r.abs_err)).collect()))
        .with(Series::new("bound", rows.iter().map(|r| (x(r), r.bound.unwrap_or(f64::NAN))).collect()).dashed())
}

/// `S_30(t)` at `t = ½` for each of `K5`, `K5`-pendant, `K3,3`, with `χ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub t: f64,
    pub count: usize,
    pub values: Vec<(String, i64, f64)>,
}

pub const COMPARISON_COUNT: usize = 30;

/// `t ↦ S_30(t)` with `d = 1` for the three graphs of equal `ℓ_min = 2`.
pub fn run_comparison(cfg: &ExperimentConfig) -> Result<ComparisonReport> {
    let tf = TestFunction::cosine_power(1)?;
    let graphs: Vec<MetricGraph> = [Preset::K5, Preset::K5Pendant, Preset::K33].iter().map(|p| p.graph()).collect();
    let spectra: Vec<Spectrum> = graphs
        .par_iter()
        .map(|g| secular_spectrum_count(g, COMPARISON_COUNT))
        .collect::<qgchi_core::Result<_>>()?;
    let t_star = 1.0 / graphs[0].l_min();
    let t_grid: Vec<f64> = (4..=128).map(|i| f64::from(i) / 128.0).collect();
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for (g, s) in graphs.iter().zip(&spectra) {
        let chi = g.euler_characteristic();
        let priors = Priors::of(g);
        for &t in &t_grid {
            let sum = truncated_sum(s, &tf, t, COMPARISON_COUNT)?;
            let bound = if t >= 1.0 / g.l_min() { bound_at(&tf, &priors, COMPARISON_COUNT, t) } else { None };
            rows.push(Row { t, count: COMPARISON_COUNT, sum, abs_err: (sum - chi as f64).abs(), bound, seed: None, series: g.name().into() });
        }
        values.push((g.name().to_string(), chi, truncated_sum(s, &tf, t_star, COMPARISON_COUNT)?));
    }
    let header = vec![
        ("graphs".to_string(), "k5,k5-pendant,k33".to_string()),
        ("d".into(), "1".into()),
        ("J".into(), COMPARISON_COUNT.to_string()),
    ];
    let plot = series_of(&rows, |r| r.t, |r| r.sum)
        .into_iter()
        .fold(Plot::new(format!("S_J(t), d = 1, J = {COMPARISON_COUNT}"), "t", "S_J(t)"), |p, s| p.with(s));
    write_panel(&cfg.out, "comparison", &header, &rows, plot)?;
    Ok(ComparisonReport { t: t_star, count: COMPARISON_COUNT, values })
}

/// `ρ` values of the order table.
pub const TABLE_RHO: [f64; 6] = [2.0, 15.6, 16.5, 421.0, 423.0, 1e4];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow {
    pub rho: f64,
    pub order: u32,
    pub excess: usize,
    pub alpha_star: f64,
}

/// Optimal order and `J* − M` at each `ρ` of [`TABLE_RHO`].
pub fn order_table(eps_bar: f64) -> Result<Vec<TableRow>> {
    TABLE_RHO
        .iter()
        .map(|&rho| {
            let o = optimal_order(eps_bar, 0, rho)?;
            Ok(TableRow { rho, order: o.order, excess: o.count, alpha_star: o.alpha_star })
        })
        .collect()
}

pub fn table_csv(eps_bar: f64, rows: &[TableRow]) -> String {
    let mut out = format!("# eps_bar={eps_bar}\nrho,d_star,J_star_minus_M,alpha_star\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{},{:e}", r.rho, r.order, r.excess, r.alpha_star);
    }
    out
}

pub fn run_table(cfg: &ExperimentConfig) -> Result<Vec<TableRow>> {
    let rows = order_table(cfg.eps_bar)?;
    write_file(&cfg.out.join("table.csv"), &table_csv(cfg.eps_bar, &rows))?;
    Ok(rows)
}
