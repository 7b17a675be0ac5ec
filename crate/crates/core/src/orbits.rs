//! Periodic orbits and the smoothed trace formula
//! `χ + Σ_p ℓ(prim p) S_V(p) f(ℓ(p)) = 2f̂(0) + 2 Σ_{k_j>0} Re f̂(k_j)`.
//!
//! A directed edge is identified with the half-edge it leaves from: id `2e`
//! runs `u → v` along edge `e`, id `2e + 1` runs `v → u`. An orbit is a cyclic
//! sequence of directed edges, taken modulo rotation. A reversed orbit is a
//! separate orbit unless it is a rotation of the original (bounces are).
//! Transitions with zero amplitude (back-reflection at a degree-2 vertex) are
//! never taken, so every enumerated orbit contributes.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::estimator::truncated_sum;
use crate::graph::MetricGraph;
use crate::planner::tail_bound_for;
use crate::spectrum::Spectrum;
use crate::sum::CompensatedSum;
use crate::testfn::TestFunction;

/// Enumeration aborts past this many orbits.
pub const MAX_ORBITS: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicOrbit {
    /// Directed edge ids, in canonical (lexicographically least) rotation.
    pub steps: Vec<usize>,
    pub length: f64,
    pub prim_length: f64,
    pub s_v: f64,
}

impl PeriodicOrbit {
    /// The orbit traversed backwards, in canonical rotation.
    pub fn reversed(&self) -> Self {
        let steps: Vec<usize> = self.steps.iter().rev().map(|&d| d ^ 1).collect();
        Self { steps: canonical_rotation(&steps), ..self.clone() }
    }

    /// Number of repetitions of the primitive orbit.
    pub fn repetitions(&self) -> usize {
        self.steps.len() / primitive_period(&self.steps)
    }
}

/// Vertex scattering coefficient for arriving through half-edge `arrive` and
/// leaving through `depart` (both at the same vertex of degree `v`):
/// `2/v − 1` for back-reflection, `2/v` otherwise.
pub fn vertex_coefficient(g: &MetricGraph, arrive: usize, depart: usize) -> f64 {
    let deg = g.degree(g.half_edge_vertex(arrive)) as f64;
    if arrive == depart {
        2.0 / deg - 1.0
    } else {
        2.0 / deg
    }
}

/// Product of vertex coefficients along the closed sequence `steps`.
pub fn scattering_amplitude(steps: &[usize], g: &MetricGraph) -> f64 {
    (0..steps.len())
        .map(|i| {
            let arrive = steps[i] ^ 1;
            let depart = steps[(i + 1) % steps.len()];
            vertex_coefficient(g, arrive, depart)
        })
        .product()
}

fn canonical_rotation(steps: &[usize]) -> Vec<usize> {
    let n = steps.len();
    (0..n)
        .map(|r| steps[r..].iter().chain(&steps[..r]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

fn is_canonical(steps: &[usize]) -> bool {
    let n = steps.len();
    (1..n).all(|r| {
        let rotated = steps[r..].iter().chain(&steps[..r]);
        steps.iter().cmp(rotated) != core::cmp::Ordering::Greater
    })
}

fn primitive_period(steps: &[usize]) -> usize {
    let n = steps.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| steps[i] == steps[i - p]))
        .unwrap_or(n)
}

/// Every periodic orbit of length at most `l_max`, by depth-first search over
/// directed edges where the first edge is the smallest id in the sequence.
pub fn enumerate_orbits(g: &MetricGraph, l_max: f64) -> Result<Vec<PeriodicOrbit>> {
    if !(l_max > 0.0) || !l_max.is_finite() {
        return Err(Error::Domain("l_max must be positive"));
    }
    let limit = l_max * (1.0 + 1e-12);
    let len = |d: usize| g.edges()[d / 2].length;
    let mut orbits = Vec::new();
    let mut path: Vec<usize> = Vec::new();

    for start in 0..2 * g.edge_count() {
        if len(start) > limit {
            continue;
        }
        // cursor[i]: next half-edge to try after path[i]
        path.clear();
        path.push(start);
        let mut total = len(start);
        let mut cursor: Vec<usize> = alloc::vec![0];
        while let Some(&next) = cursor.last() {
            let depth = cursor.len() - 1;
            let arrive = path[depth] ^ 1;
            let vertex = g.half_edge_vertex(arrive);
            let halves = g.incident(vertex);
            let closes = g.half_edge_vertex(start) == vertex && vertex_coefficient(g, arrive, start) != 0.0;
            if next == 0 && closes && is_canonical(&path) {
                let p = primitive_period(&path);
                orbits.push(PeriodicOrbit {
                    steps: path.clone(),
                    length: path.iter().map(|&d| len(d)).sum(),
                    prim_length: path[..p].iter().map(|&d| len(d)).sum(),
                    s_v: scattering_amplitude(&path, g),
                });
                if orbits.len() > MAX_ORBITS {
                    return Err(Error::TooManyOrbits(MAX_ORBITS));
                }
            }
            if next >= halves.len() {
                cursor.pop();
                if let Some(d) = path.pop() {
                    total -= len(d);
                }
                continue;
            }
            cursor[depth] += 1;
            let depart = halves[next];
            if depart < start || vertex_coefficient(g, arrive, depart) == 0.0 || total + len(depart) > limit {
                continue;
            }
            path.push(depart);
            total += len(depart);
            cursor.push(0);
        }
    }
    orbits.sort_by(|a, b| a.length.total_cmp(&b.length).then_with(|| a.steps.cmp(&b.steps)));
    Ok(orbits)
}

/// Geometric side of the trace formula for `f_t(ℓ) = t·f(tℓ)`:
/// `χ + Σ_p ℓ(prim p) S_V(p) f_t(ℓ(p))`, over orbits up to `l_max >= 1/t`.
pub fn orbit_side(g: &MetricGraph, tf: &TestFunction, t: f64, l_max: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain("t must be positive"));
    }
    if l_max < 1.0 / t {
        return Err(Error::Domain("l_max must cover the support 1/t"));
    }
    let mut acc = CompensatedSum::new();
    acc.add(g.euler_characteristic() as f64);
    for p in enumerate_orbits(g, l_max)? {
        acc.add(p.prim_length * p.s_v * t * tf.eval(t * p.length));
    }
    Ok(acc.value())
}

/// Both sides of the trace formula and the certified size of the spectral
/// tail that was left out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub certified_bound: f64,
}

impl TraceCheck {
    /// `gap <= certified_bound + 1e-9`.
    pub fn holds(&self) -> bool {
        self.gap <= self.certified_bound + 1e-9
    }
}

/// Compares the orbit side with the spectral sum over every supplied
/// eigenfrequency. `s` must contain all eigenfrequencies up to its coverage.
pub fn trace_check(g: &MetricGraph, tf: &TestFunction, t: f64, s: &Spectrum) -> Result<TraceCheck> {
    let lhs = orbit_side(g, tf, t, 1.0 / t)?;
    let rhs = truncated_sum(s, tf, t, s.len())?;
    let excess = s.len() as f64 - g.vertex_count() as f64;
    let certified_bound = tail_bound_for(tf, excess, g.total_length() * t)
        .map_err(|_| Error::InsufficientSpectrum { needed: s.len() + 1, available: s.len() })?;
    Ok(TraceCheck { lhs, rhs, gap: libm::fabs(lhs - rhs), certified_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::AnalyticFamily;

    #[test]
    fn loop_orbits() {
        let g = AnalyticFamily::Loop { length: 1.0 }.graph().unwrap();
        let orbits = enumerate_orbits(&g, 2.5).unwrap();
        assert_eq!(orbits.len(), 4);
        assert!(orbits.iter().all(|p| p.prim_length == 1.0 && p.s_v == 1.0));
        let lengths: Vec<f64> = orbits.iter().map(|p| p.length).collect();
        assert_eq!(lengths, [1.0, 1.0, 2.0, 2.0]);
    }

    #[test]
    fn interval_bounce() {
        let g = AnalyticFamily::Interval { length: 1.0 }.graph().unwrap();
        let orbits = enumerate_orbits(&g, 2.1).unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].length, 2.0);
        assert_eq!(orbits[0].s_v, 1.0);
        assert_eq!(orbits[0].reversed(), orbits[0]);
    }

    #[test]
    fn star_bounces() {
        let g = AnalyticFamily::Star { degree: 3, length: 1.0 }.graph().unwrap();
        let orbits = enumerate_orbits(&g, 2.5).unwrap();
        assert_eq!(orbits.len(), 3);
        for p in &orbits {
            assert_eq!(p.length, 2.0);
            assert!((p.s_v + 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn coefficients() {
        let g = AnalyticFamily::Star { degree: 3, length: 1.0 }.graph().unwrap();
        let c = g.vertex_index("center").unwrap();
        let h = g.incident(c);
        assert!((vertex_coefficient(&g, h[0], h[0]) + 1.0 / 3.0).abs() < 1e-15);
        assert!((vertex_coefficient(&g, h[0], h[1]) - 2.0 / 3.0).abs() < 1e-15);
        let leaf = g.vertex_index("leaf000").unwrap();
        let hl = g.incident(leaf)[0];
        assert_eq!(vertex_coefficient(&g, hl, hl), 1.0);
        let o = AnalyticFamily::Loop { length: 1.0 }.graph().unwrap();
        assert_eq!(vertex_coefficient(&o, 0, 1), 1.0);
        assert_eq!(vertex_coefficient(&o, 0, 0), 0.0);
    }

    #[test]
    fn lasso_has_no_orbit_below_one() {
        let g = MetricGraph::new("l", &["a", "b"], &[("a", "a", 1.0), ("a", "b", 5.0)]).unwrap();
        assert!(enumerate_orbits(&g, 0.9).unwrap().is_empty());
    }

    #[test]
    fn primitive_length_of_repetitions() {
        let g = AnalyticFamily::Star { degree: 3, length: 1.0 }.graph().unwrap();
        let orbits = enumerate_orbits(&g, 4.0).unwrap();
        let reps: Vec<_> = orbits.iter().filter(|p| p.repetitions() == 2).collect();
        assert_eq!(reps.len(), 3);
        assert!(reps.iter().all(|p| p.prim_length == 2.0 && p.length == 4.0));
        // mixed bounces i then j, one per unordered pair
        let mixed = orbits.iter().filter(|p| p.length == 4.0 && p.repetitions() == 1).count();
        assert_eq!(mixed, 3);
    }

    #[test]
    fn no_orbits_in_support_gives_chi() {
        let g = AnalyticFamily::Star { degree: 3, length: 1.0 }.graph().unwrap();
        let tf = TestFunction::cosine_power(1).unwrap();
        assert_eq!(orbit_side(&g, &tf, 0.5, 2.0).unwrap(), 1.0);
        assert!(orbit_side(&g, &tf, 0.5, 1.0).is_err());
    }
}
