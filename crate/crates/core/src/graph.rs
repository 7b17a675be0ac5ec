//! Metric graphs: vertices glued from edge endpoints, positive edge lengths,
//! loops and parallel edges allowed.
//!
//! Every edge `e` owns two half-edges: `2e` sits at its `u` end and `2e + 1`
//! at its `v` end. A loop therefore contributes two half-edges to its vertex
//! and degree counts it twice.

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub length: f64,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

/// A finite, compact, connected metric graph.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricGraph {
    name: String,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    incident: Vec<Vec<usize>>,
}

/// Geometric invariants read off a graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub chi: i64,
    pub total_length: f64,
    pub l_min: f64,
}

impl MetricGraph {
    /// Builds and validates a graph from vertex ids and `(u, v, length)` edges.
    ///
    /// Vertices are stored in lexicographic order of their ids.
    pub fn new<S, T>(name: &str, vertices: &[S], edges: &[(T, T, f64)]) -> Result<Self>
    where
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let mut ids: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        ids.sort();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0].clone()));
        }
        let lookup = |id: &str| {
            ids.binary_search_by(|probe| probe.as_str().cmp(id))
                .map_err(|_| Error::UnknownVertex(id.to_string()))
        };
        let mut indexed = Vec::with_capacity(edges.len());
        for (u, v, length) in edges {
            indexed.push(Edge {
                u: lookup(u.as_ref())?,
                v: lookup(v.as_ref())?,
                length: *length,
            });
        }
        Self::from_parts(name.to_string(), ids, indexed)
    }

    /// `vertices` must already be sorted and unique; edge endpoints index into it.
    fn from_parts(name: String, vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        if vertices.is_empty() || edges.is_empty() {
            return Err(Error::EmptyGraph);
        }
        for (i, e) in edges.iter().enumerate() {
            if !(e.length > 0.0) || !e.length.is_finite() {
                return Err(Error::InvalidLength { edge: i, length: e.length });
            }
        }
        let mut incident = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            incident[e.u].push(2 * i);
            incident[e.v].push(2 * i + 1);
        }
        let g = Self { name, vertices, edges, incident };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    /// Rebuilds from named endpoints, re-sorting vertex ids.
    fn rebuild(&self, vertices: Vec<String>, edges: Vec<(String, String, f64)>) -> Result<Self> {
        Self::new(&self.name, &vertices, &edges)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.binary_search_by(|probe| probe.as_str().cmp(id)).ok()
    }

    /// Half-edges sitting at vertex `v`.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    /// Vertex at which half-edge `h` sits.
    pub fn half_edge_vertex(&self, h: usize) -> usize {
        let e = &self.edges[h / 2];
        if h.is_multiple_of(2) {
            e.u
        } else {
            e.v
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64
    }

    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    pub fn shortest_edge(&self) -> f64 {
        self.edges.iter().map(|e| e.length).fold(f64::INFINITY, f64::min)
    }

    /// Length of the shortest cycle, `+inf` for trees.
    ///
    /// For each edge `(u, v)`: its own length if it is a loop, otherwise its
    /// length plus the shortest `u`-`v` distance in the graph without it.
    pub fn shortest_cycle(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (i, e) in self.edges.iter().enumerate() {
            let c = if e.is_loop() {
                e.length
            } else {
                e.length + self.distance_avoiding(e.u, e.v, i, best - e.length)
            };
            best = best.min(c);
        }
        best
    }

    /// Shortest periodic orbit length: the shorter of the shortest cycle and
    /// a bounce along the shortest edge.
    pub fn l_min(&self) -> f64 {
        self.shortest_cycle().min(2.0 * self.shortest_edge())
    }

    pub fn summarize(&self) -> GraphSummary {
        GraphSummary {
            vertices: self.vertex_count(),
            edges: self.edge_count(),
            chi: self.euler_characteristic(),
            total_length: self.total_length(),
            l_min: self.l_min(),
        }
    }

    /// Common edge length if every edge has the same length within `rel_tol`.
    pub fn common_length(&self, rel_tol: f64) -> Option<f64> {
        let a = self.edges[0].length;
        self.edges
            .iter()
            .all(|e| libm::fabs(e.length - a) <= rel_tol * a)
            .then_some(a)
    }

    /// Splits `edge` at distance `position` from its `u` end, inserting a new
    /// degree-2 vertex.
    pub fn subdivide_edge(&self, edge: usize, position: f64) -> Result<Self> {
        let e = *self.edges.get(edge).ok_or(Error::UnknownEdge(edge))?;
        if !(position > 0.0 && position < e.length) {
            return Err(Error::InvalidPosition { position, length: e.length });
        }
        let mid = self.fresh_vertex_id(&format!("{}~{}", self.vertices[e.u], self.vertices[e.v]));
        let mut vertices = self.vertices.clone();
        vertices.push(mid.clone());
        let mut edges = self.named_edges();
        edges[edge] = (self.vertices[e.u].clone(), mid.clone(), position);
        edges.push((mid, self.vertices[e.v].clone(), e.length - position));
        self.rebuild(vertices, edges)
    }

    /// Adds a loop of the given length at `vertex`.
    pub fn attach_loop(&self, vertex: &str, length: f64) -> Result<Self> {
        if self.vertex_index(vertex).is_none() {
            return Err(Error::UnknownVertex(vertex.to_string()));
        }
        let mut edges = self.named_edges();
        edges.push((vertex.to_string(), vertex.to_string(), length));
        self.rebuild(self.vertices.clone(), edges)
    }

    /// Every edge length multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0) || !factor.is_finite() {
            return Err(Error::Domain("scale factor must be positive and finite"));
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { length: e.length * factor, ..*e })
            .collect();
        Self::from_parts(self.name.clone(), self.vertices.clone(), edges)
    }

    /// Subdivides every edge into pieces of one common length so the result is
    /// equilateral; loops are cut into at least two pieces.
    ///
    /// The common length is `shortest_edge / q` for the smallest
    /// `q <= max_denominator` making every length an integer multiple of it
    /// (relative tolerance 1e-9). Exact for rational length ratios only.
    pub fn equilateral_refinement(&self, max_denominator: u32) -> Result<Self> {
        let shortest = self.shortest_edge();
        let pieces_for = |a: f64| -> Option<Vec<usize>> {
            self.edges
                .iter()
                .map(|e| {
                    let r = e.length / a;
                    let n = libm::round(r);
                    (n >= 1.0 && libm::fabs(r - n) <= 1e-9 * r).then_some(n as usize)
                })
                .collect()
        };
        let (mut a, mut pieces) = (1..=max_denominator)
            .find_map(|q| {
                let a = shortest / f64::from(q);
                pieces_for(a).map(|p| (a, p))
            })
            .ok_or(Error::Incommensurable(max_denominator))?;
        if self.edges.iter().zip(&pieces).any(|(e, &n)| e.is_loop() && n < 2) {
            a /= 2.0;
            pieces.iter_mut().for_each(|n| *n *= 2);
        }

        let mut vertices = self.vertices.clone();
        let mut edges = Vec::new();
        for (i, (e, &n)) in self.edges.iter().zip(&pieces).enumerate() {
            let mut prev = self.vertices[e.u].clone();
            for j in 1..n {
                let id = self.fresh_vertex_id(&format!("{}#{}.{}", self.vertices[e.u], i, j));
                vertices.push(id.clone());
                edges.push((prev, id.clone(), a));
                prev = id;
            }
            edges.push((prev, self.vertices[e.v].clone(), a));
        }
        self.rebuild(vertices, edges)
    }

    fn named_edges(&self) -> Vec<(String, String, f64)> {
        self.edges
            .iter()
            .map(|e| (self.vertices[e.u].clone(), self.vertices[e.v].clone(), e.length))
            .collect()
    }

    fn fresh_vertex_id(&self, base: &str) -> String {
        let mut id = base.to_string();
        let mut n = 1;
        while self.vertex_index(&id).is_some() {
            id = format!("{base}'{n}");
            n += 1;
        }
        id
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &h in &self.incident[v] {
                let w = self.half_edge_vertex(h ^ 1);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Dijkstra from `from` to `to` ignoring edge `skip`; gives up past `cutoff`.
    fn distance_avoiding(&self, from: usize, to: usize, skip: usize, cutoff: f64) -> f64 {
        let mut dist = vec![f64::INFINITY; self.vertices.len()];
        let mut heap = BinaryHeap::new();
        dist[from] = 0.0;
        heap.push(Visit { dist: 0.0, vertex: from });
        while let Some(Visit { dist: d, vertex: v }) = heap.pop() {
            if v == to {
                return d;
            }
            if d > dist[v] || d > cutoff {
                continue;
            }
            for &h in &self.incident[v] {
                if h / 2 == skip {
                    continue;
                }
                let w = self.half_edge_vertex(h ^ 1);
                let nd = d + self.edges[h / 2].length;
                if nd < dist[w] {
                    dist[w] = nd;
                    heap.push(Visit { dist: nd, vertex: w });
                }
            }
        }
        f64::INFINITY
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Visit {
    dist: f64,
    vertex: usize,
}

impl Eq for Visit {}

impl Ord for Visit {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on distance
        other.dist.total_cmp(&self.dist).then(self.vertex.cmp(&other.vertex))
    }
}

impl PartialOrd for Visit {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
