//! The graphs used in the experiments.

use std::path::Path;

use qgchi_core::MetricGraph;

use crate::error::{CliError, Result};
use crate::io::read_graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Loop of length 1 with a pendant edge of length 5.
    Lasso,
    /// Complete graph on 5 vertices, unit edges.
    K5,
    /// `K5` with one edge detached from one endpoint and hung on a new vertex.
    K5Pendant,
    /// Complete bipartite graph `K3,3`, unit edges.
    K33,
}

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::Lasso, Preset::K5, Preset::K5Pendant, Preset::K33];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Lasso => "lasso",
            Preset::K5 => "k5",
            Preset::K5Pendant => "k5-pendant",
            Preset::K33 => "k33",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == s)
    }

    pub fn graph(self) -> MetricGraph {
        let built = match self {
            Preset::Lasso => MetricGraph::new("lasso", &["a", "b"], &[("a", "a", 1.0), ("a", "b", 5.0)]),
            Preset::K5 => complete(5, None),
            Preset::K5Pendant => complete(5, Some((3, 4))),
            Preset::K33 => {
                let names = ["a0", "a1", "a2", "b0", "b1", "b2"];
                let edges: Vec<_> = names[..3].iter().flat_map(|a| names[3..].iter().map(move |b| (*a, *b, 1.0))).collect();
                MetricGraph::new("k33", &names, &edges)
            }
        };
        built.expect("preset graphs are valid")
    }
}

fn complete(n: usize, pendant: Option<(usize, usize)>) -> qgchi_core::Result<MetricGraph> {
    let mut names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let v = if pendant == Some((i, j)) { "p".to_string() } else { names[j].clone() };
            edges.push((names[i].clone(), v, 1.0));
        }
    }
    let name = if pendant.is_some() {
        names.push("p".into());
        format!("k{n}-pendant")
    } else {
        format!("k{n}")
    };
    MetricGraph::new(&name, &names, &edges)
}

/// Prior bounds a plan is built from: `M̄`, `ℒ̄` and a lower bound on `ℓ_min`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Priors {
    pub max_vertices: usize,
    pub max_length: f64,
    pub min_orbit_lower: f64,
}

impl Priors {
    /// The tightest priors: the graph's own `M`, `ℒ` and `ℓ_min`.
    pub fn of(g: &MetricGraph) -> Self {
        Self { max_vertices: g.vertex_count(), max_length: g.total_length(), min_orbit_lower: g.l_min() }
    }
}

/// An existing file path, else a preset name.
pub fn resolve_graph(arg: &str) -> Result<MetricGraph> {
    let path = Path::new(arg);
    if path.exists() {
        return read_graph(path);
    }
    match Preset::from_name(arg) {
        Some(p) => Ok(p.graph()),
        None => Err(CliError::input(format!("{arg}: no such file or preset"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_invariants() {
        let summary = |p: Preset| {
            let g = p.graph();
            (g.vertex_count(), g.edge_count(), g.euler_characteristic(), g.total_length(), g.l_min())
        };
        assert_eq!(summary(Preset::Lasso), (2, 2, 0, 6.0, 1.0));
        assert_eq!(summary(Preset::K5), (5, 10, -5, 10.0, 2.0));
        assert_eq!(summary(Preset::K5Pendant), (6, 10, -4, 10.0, 2.0));
        assert_eq!(summary(Preset::K33), (6, 9, -3, 9.0, 2.0));
    }

    #[test]
    fn names_round_trip() {
        for p in Preset::ALL {
            assert_eq!(Preset::from_name(p.name()), Some(p));
        }
        assert!(resolve_graph("k7").is_err());
    }
}
