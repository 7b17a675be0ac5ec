//! Graph JSON and spectrum CSV.
//!
//! Graph files look like
//! `{"name": "lasso", "vertices": ["a", "b"], "edges": [{"u": "a", "v": "a", "length": 1.0}, ...]}`.
//!
//! Spectrum files have the header `j,k` and one row per eigenfrequency,
//! multiplicities expanded, `k` written with 17 significant digits. Lines
//! starting with `#` carry `key=value` metadata (method, tolerance, coverage)
//! and are optional on input.

use std::fs;
use std::path::Path;

use qgchi_core::{Method, MetricGraph, Spectrum};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    #[serde(default)]
    pub name: String,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeFile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeFile {
    pub u: String,
    pub v: String,
    pub length: f64,
}

pub fn parse_graph(text: &str) -> Result<MetricGraph> {
    let doc: GraphFile = serde_json::from_str(text).map_err(|e| CliError::input(format!("malformed graph: {e}")))?;
    let edges: Vec<(&str, &str, f64)> = doc.edges.iter().map(|e| (e.u.as_str(), e.v.as_str(), e.length)).collect();
    Ok(MetricGraph::new(&doc.name, &doc.vertices, &edges)?)
}

pub fn graph_to_json(g: &MetricGraph) -> String {
    let names = g.vertices();
    let doc = GraphFile {
        name: g.name().to_string(),
        vertices: names.to_vec(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeFile { u: names[e.u].clone(), v: names[e.v].clone(), length: e.length })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("graph serializes") + "\n"
}

pub fn read_graph(path: &Path) -> Result<MetricGraph> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_graph(&text).map_err(|e| match e {
        CliError::Input(m) => CliError::input(format!("{}: {m}", path.display())),
        CliError::Core(c) => CliError::input(format!("{}: {c}", path.display())),
        other => other,
    })
}

fn method_from_str(s: &str) -> Method {
    match s {
        "von-below" => Method::VonBelow,
        "secular" => Method::Secular,
        "analytic" => Method::Analytic,
        _ => Method::External,
    }
}

pub fn write_spectrum(s: &Spectrum) -> String {
    let mut out = format!(
        "# method={}\n# tol={:e}\n# k_max={:.16e}\n",
        s.method().as_str(),
        s.tol(),
        s.k_max_covered()
    );
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["j", "k"]).expect("in-memory write");
    for (i, k) in s.values().iter().enumerate() {
        w.write_record([(i + 1).to_string(), format!("{k:.16e}")]).expect("in-memory write");
    }
    out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii"));
    out
}

/// Parses a spectrum file. Without metadata the spectrum is `external`,
/// with tolerance `default_tol` and coverage up to its last value.
pub fn parse_spectrum(text: &str, default_tol: f64) -> Result<Spectrum> {
    let mut method = Method::External;
    let mut tol = default_tol;
    let mut k_max = None;
    for line in text.lines().filter_map(|l| l.trim().strip_prefix('#')) {
        let Some((key, value)) = line.split_once('=') else { continue };
        let value = value.trim();
        let num = || value.parse::<f64>().map_err(|_| CliError::input(format!("bad metadata `{line}`")));
        match key.trim() {
            "method" => method = method_from_str(value),
            "tol" => tol = num()?,
            "k_max" => k_max = Some(num()?),
            _ => {}
        }
    }
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = r.headers().map_err(|e| CliError::input(format!("spectrum csv: {e}")))?;
    if headers.iter().collect::<Vec<_>>() != ["j", "k"] {
        return Err(CliError::input("spectrum csv must have header `j,k`"));
    }
    let mut values = Vec::new();
    for (row, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| CliError::input(format!("spectrum csv: {e}")))?;
        let j: usize = rec[0].parse().map_err(|_| CliError::input(format!("row {}: bad index `{}`", row + 1, &rec[0])))?;
        if j != row + 1 {
            return Err(CliError::input(format!("row {}: index {j} out of sequence", row + 1)));
        }
        let k: f64 = rec[1].parse().map_err(|_| CliError::input(format!("row {}: bad value `{}`", row + 1, &rec[1])))?;
        values.push(k);
    }
    if values.is_empty() {
        return Err(CliError::input("spectrum csv has no rows"));
    }
    let covered = k_max.unwrap_or(*values.last().unwrap());
    Spectrum::new(values, covered, method, tol).map_err(|e| CliError::input(format!("spectrum csv: {e}")))
}

pub fn read_spectrum(path: &Path, default_tol: f64) -> Result<Spectrum> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_spectrum(&text, default_tol).map_err(|e| match e {
        CliError::Input(m) => CliError::input(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}
