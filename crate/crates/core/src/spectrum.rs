//! Eigenfrequencies `k_j = √λ_j` of the standard Laplacian.
//!
//! Two independent numerical routes are provided, plus closed forms:
//!
//! * [`secular_spectrum`] works on any graph. On edge `e` the eigenfunction is
//!   `a_e cos(kx) + b_e sin(kx)`; continuity and the derivative balance at
//!   every vertex give a `2N × 2N` real matrix `A(k)` that is singular exactly
//!   at eigenfrequencies. Roots are found by scanning the smallest singular value on a grid,
//!   refining each local minimum by golden-section search and reading the
//!   multiplicity off the numerical nullity.
//! * [`von_below_spectrum`] works on equilateral graphs through the spectrum
//!   of the degree-normalised adjacency operator.
//! * [`AnalyticFamily`] gives exact spectra of intervals, loops and stars.
//!
//! `k = 0` is always inserted analytically with multiplicity one.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::MetricGraph;

/// Singular values below this fraction of the largest count toward the nullity.
pub const RANK_TOL: f64 = 1e-7;
/// Accuracy reported for secular roots.
pub const SECULAR_TOL: f64 = 1e-9;
/// Accuracy reported for von Below values.
pub const VON_BELOW_TOL: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    VonBelow,
    Secular,
    Analytic,
    External,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::VonBelow => "von-below",
            Method::Secular => "secular",
            Method::Analytic => "analytic",
            Method::External => "external",
        }
    }
}

/// Nondecreasing eigenfrequencies repeated by multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    k_max_covered: f64,
    method: Method,
    tol: f64,
}

impl Spectrum {
    pub fn new(values: Vec<f64>, k_max_covered: f64, method: Method, tol: f64) -> Result<Self> {
        let sorted = values.windows(2).all(|w| w[0] <= w[1]);
        if !sorted || values.iter().any(|&k| !(k >= 0.0) || !k.is_finite()) {
            return Err(Error::InvalidSpectrum);
        }
        Ok(Self { values, k_max_covered, method, tol })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn k_max_covered(&self) -> f64 {
        self.k_max_covered
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Accuracy of each value (numerical tolerance or noise half-width).
    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// The first `count` values.
    pub fn truncated(&self, count: usize) -> Result<Self> {
        if count > self.len() {
            return Err(Error::InsufficientSpectrum { needed: count, available: self.len() });
        }
        let values = self.values[..count].to_vec();
        let covered = if count < self.len() { values.last().copied().unwrap_or(0.0) } else { self.k_max_covered };
        Ok(Self { values, k_max_covered: covered, method: self.method, tol: self.tol })
    }

    /// Number of values `<= k`.
    pub fn count_up_to(&self, k: f64) -> usize {
        self.values.partition_point(|&v| v <= k)
    }

    pub(crate) fn with_values(&self, values: Vec<f64>, tol: f64) -> Self {
        Self { values, k_max_covered: self.k_max_covered, method: self.method, tol }
    }
}

/// The secular matrix `A(k)`: unknowns `(a_e, b_e)` in columns `2e, 2e+1`;
/// for each vertex, continuity rows followed by one balance row (derivatives
/// divided by `k`, so entries stay bounded).
pub fn secular_matrix(g: &MetricGraph, k: f64) -> DMatrix<f64> {
    let n = 2 * g.edge_count();
    let mut a = DMatrix::zeros(n, n);
    // value of the eigenfunction at half-edge h as coefficients on (a_e, b_e)
    let value = |h: usize| -> (f64, f64) {
        if h.is_multiple_of(2) {
            (1.0, 0.0)
        } else {
            let l = g.edges()[h / 2].length;
            (libm::cos(k * l), libm::sin(k * l))
        }
    };
    // inward derivative over k
    let slope = |h: usize| -> (f64, f64) {
        if h.is_multiple_of(2) {
            (0.0, 1.0)
        } else {
            let l = g.edges()[h / 2].length;
            (libm::sin(k * l), -libm::cos(k * l))
        }
    };
    let mut row = 0;
    for v in 0..g.vertex_count() {
        let halves = g.incident(v);
        let h0 = halves[0];
        for &h in &halves[1..] {
            let (p0, q0) = value(h0);
            let (p, q) = value(h);
            a[(row, 2 * (h0 / 2))] += p0;
            a[(row, 2 * (h0 / 2) + 1)] += q0;
            a[(row, 2 * (h / 2))] -= p;
            a[(row, 2 * (h / 2) + 1)] -= q;
            row += 1;
        }
        for &h in halves {
            let (p, q) = slope(h);
            a[(row, 2 * (h / 2))] += p;
            a[(row, 2 * (h / 2) + 1)] += q;
        }
        row += 1;
    }
    debug_assert_eq!(row, n);
    a
}

fn singular_values(g: &MetricGraph, k: f64) -> Vec<f64> {
    secular_matrix(g, k).singular_values().iter().copied().collect()
}

/// Entries of `A(k)` are bounded by 1, but on a single loop every entry
/// vanishes at a root, so the scale is floored at 1.
fn scale(s: &[f64]) -> f64 {
    s.iter().copied().fold(1.0, f64::max)
}

/// `σ_min / max(σ_max, 1)` of the secular matrix.
fn singular_ratio(g: &MetricGraph, k: f64) -> f64 {
    let s = singular_values(g, k);
    let min = s.iter().copied().fold(f64::INFINITY, f64::min);
    min / scale(&s)
}

/// Number of singular values of `A(k)` below `RANK_TOL · max(σ_max, 1)`.
pub fn nullity(g: &MetricGraph, k: f64) -> usize {
    let s = singular_values(g, k);
    let max = scale(&s);
    s.iter().filter(|&&x| x < RANK_TOL * max).count()
}

fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if b - a <= 1e-12 * b.max(1.0) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        c
    } else {
        d
    }
}

/// All eigenfrequencies in `[0, k_max]` of any graph, by root scanning of the
/// secular matrix on a grid of step `π / (8ℒ)`.
///
/// Each local minimum of `σ_min` on the grid is refined by golden-section
/// search and its multiplicity read off the nullity. The result is then
/// checked gap by gap against [`count_below`]; roots the scan missed (close
/// pairs inside one grid cell) are located by bisection on the count.
pub fn secular_spectrum(g: &MetricGraph, k_max: f64) -> Result<Spectrum> {
    if !(k_max > 0.0) || !k_max.is_finite() {
        return Err(Error::InvalidKMax(k_max));
    }
    let total = g.total_length();
    let h = PI / (8.0 * total);
    // k_2 >= π/ℒ = 8h, so nothing is lost by starting the scan at h
    let steps = libm::ceil(k_max / h) as usize + 2;
    let grid: Vec<f64> = (1..=steps).map(|i| i as f64 * h).collect();
    let ratio: Vec<f64> = grid.iter().map(|&k| singular_ratio(g, k)).collect();

    let mut roots: Vec<(f64, usize)> = Vec::new();
    for i in 1..grid.len() - 1 {
        if !(ratio[i] < ratio[i - 1] && ratio[i] <= ratio[i + 1]) {
            continue;
        }
        let k = golden_min(|k| singular_ratio(g, k), grid[i - 1], grid[i + 1]);
        if singular_ratio(g, k) < RANK_TOL {
            roots.push((k, nullity(g, k)));
        }
    }
    let mut roots = merge_roots(roots);
    let end = roots.iter().map(|r| r.0).find(|&r| r > k_max * (1.0 + 1e-10)).unwrap_or(k_max + h).min(k_max + h);
    complete_roots(g, &mut roots, 0.5 * h, 0.5 * (k_max * (1.0 + 1e-10) + end))?;

    let mut values = vec![0.0];
    for (k, mult) in roots {
        if k <= k_max * (1.0 + 1e-12) {
            values.extend(core::iter::repeat_n(k, mult));
        }
    }
    let s = Spectrum::new(values, k_max, Method::Secular, SECULAR_TOL)?;
    count_check(&s, g)?;
    Ok(s)
}

fn merge_roots(mut roots: Vec<(f64, usize)>) -> Vec<(f64, usize)> {
    roots.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, usize)> = Vec::new();
    for (k, mult) in roots {
        match merged.last_mut() {
            Some(last) if libm::fabs(last.0 - k) < 1e-8 => last.1 = last.1.max(mult),
            _ => merged.push((k, mult)),
        }
    }
    merged
}

/// Gaps narrower than this are treated as one cluster by the count guard.
const GAP_MIN: f64 = 1e-6;

/// Makes `roots` agree with [`count_below`] on `[lo, hi]`, where `lo` lies
/// below the first positive eigenfrequency.
fn complete_roots(g: &MetricGraph, roots: &mut Vec<(f64, usize)>, lo: f64, hi: f64) -> Result<()> {
    // one probe inside every gap wide enough to evaluate the count reliably
    let inside: Vec<f64> = roots.iter().map(|r| r.0).filter(|&k| k > lo && k < hi).collect();
    let mut probes = vec![count_in_gap(g, roots, lo, lo)?];
    for w in inside.windows(2) {
        if w[1] - w[0] > GAP_MIN {
            probes.push(count_in_gap(g, roots, w[0], w[1])?);
        }
    }
    probes.push(count_in_gap(g, roots, hi, hi)?);
    let mut extra = Vec::new();
    for w in probes.windows(2) {
        bisect_missing(g, roots, w[0], w[1], &mut extra)?;
    }
    roots.extend(extra);
    roots.retain(|r| r.1 > 0);
    roots.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(())
}

/// A regular point of `[a, b]` away from known roots, with its count.
fn count_in_gap(g: &MetricGraph, roots: &[(f64, usize)], a: f64, b: f64) -> Result<(f64, usize)> {
    let width = if b > a { b - a } else { 1e-6 * a };
    let centre = 0.5 * (a + b);
    for i in 0..32 {
        let off = if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 } as f64;
        let p = centre + off * width / 32.0;
        let clear = roots.iter().all(|r| libm::fabs(r.0 - p) > width / 128.0);
        if !clear {
            continue;
        }
        if let Some(n) = count_below(g, p) {
            return Ok((p, n));
        }
    }
    Err(Error::CountCheck(format!("no regular point in [{a}, {b}]")))
}

fn found_between(roots: &[(f64, usize)], a: f64, b: f64) -> usize {
    roots.iter().filter(|r| r.0 > a && r.0 < b).map(|r| r.1).sum()
}

fn bisect_missing(
    g: &MetricGraph,
    roots: &mut [(f64, usize)],
    (a, na): (f64, usize),
    (b, nb): (f64, usize),
    extra: &mut Vec<(f64, usize)>,
) -> Result<()> {
    let expected = nb.saturating_sub(na);
    let found = found_between(roots, a, b) + found_between(extra, a, b);
    if found == expected {
        return Ok(());
    }
    if nb < na {
        return Err(Error::CountCheck(format!("eigenvalue count decreases on ({a}, {b})")));
    }
    let narrow = b - a <= 1e-11 * b.max(1.0);
    if narrow || b - a <= GAP_MIN && found > 0 {
        // a cluster below the probe resolution: the count fixes its multiplicity
        if let Some(r) = roots.iter_mut().find(|r| r.0 > a && r.0 < b) {
            r.1 = (r.1 + expected).saturating_sub(found);
        } else if let Some(r) = extra.iter_mut().find(|r| r.0 > a && r.0 < b) {
            r.1 = (r.1 + expected).saturating_sub(found);
        } else {
            extra.push((golden_min(|k| singular_ratio(g, k), a, b), expected));
        }
        return Ok(());
    }
    if found == 0 && expected == 1 && b - a <= 1e-4 * b.max(1.0) {
        // one isolated root: σ_min is a single V on so short a bracket
        extra.push((golden_min(|k| singular_ratio(g, k), a, b), 1));
        return Ok(());
    }
    let (mid, nm) = match count_in_gap(g, roots, a + 0.25 * (b - a), b - 0.25 * (b - a)) {
        Ok(p) => p,
        Err(_) if found == 0 && b - a <= 1e-4 * b.max(1.0) => {
            extra.push((golden_min(|k| singular_ratio(g, k), a, b), expected));
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    bisect_missing(g, roots, (a, na), (mid, nm), extra)?;
    bisect_missing(g, roots, (mid, nm), (b, nb), extra)
}

/// Number of eigenfrequencies strictly below `k > 0`, zero mode included.
///
/// The index of `q(u) − k²‖u‖²` splits into the Dirichlet eigenvalues of the
/// edges below `k²` and the negative eigenvalues of the vertex matrix
/// `Λ(k)` (the form restricted to `k`-harmonic functions). Returns `None` when
/// `k` is too close to a Dirichlet eigenfrequency of some edge for `Λ(k)` to
/// be evaluated reliably.
pub fn count_below(g: &MetricGraph, k: f64) -> Option<usize> {
    if !(k > 0.0) {
        return None;
    }
    let m = g.vertex_count();
    let mut lam = DMatrix::<f64>::zeros(m, m);
    let mut dirichlet = 0usize;
    for e in g.edges() {
        let x = k * e.length;
        let (s, c) = (libm::sin(x), libm::cos(x));
        if libm::fabs(s) < 1e-6 {
            return None;
        }
        dirichlet += libm::floor(x / PI) as usize;
        if e.is_loop() {
            lam[(e.u, e.u)] += 2.0 * k * (c - 1.0) / s;
        } else {
            lam[(e.u, e.u)] += k * c / s;
            lam[(e.v, e.v)] += k * c / s;
            lam[(e.u, e.v)] -= k / s;
            lam[(e.v, e.u)] -= k / s;
        }
    }
    let eig = lam.symmetric_eigenvalues();
    let scale = eig.iter().fold(1.0f64, |acc, x| acc.max(libm::fabs(*x)));
    if eig.iter().any(|x| libm::fabs(*x) < 1e-10 * scale) {
        return None;
    }
    Some(dirichlet + eig.iter().filter(|&&x| x < 0.0).count())
}

/// The first `count` eigenfrequencies (including `k_1 = 0`) by the secular
/// method, using `k_j <= (j + N)π/ℒ` to size the scan.
pub fn secular_spectrum_count(g: &MetricGraph, count: usize) -> Result<Spectrum> {
    if count == 0 {
        return Err(Error::Domain("count must be positive"));
    }
    let k_max = (count + g.edge_count() + 1) as f64 * PI / g.total_length();
    secular_spectrum(g, k_max)?.truncated(count)
}

/// Provable eigenvalue-counting bounds; a violation means roots were missed
/// or spurious roots were accepted.
fn count_check(s: &Spectrum, g: &MetricGraph) -> Result<()> {
    let (m, n, total) = (g.vertex_count() as f64, g.edge_count() as f64, g.total_length());
    for (i, &k) in s.values().iter().enumerate() {
        let j = (i + 1) as f64;
        if k < (j - m) * PI / total - 1e-9 {
            return Err(Error::CountCheck(format!("k_{} = {k} below (j - M)π/ℒ", i + 1)));
        }
        if k > (j + n) * PI / total + 1e-9 {
            return Err(Error::CountCheck(format!("k_{} = {k} above (j + N)π/ℒ", i + 1)));
        }
    }
    let expected_min = s.k_max_covered() * total / PI - n - 1.0;
    if (s.len() as f64) < expected_min {
        return Err(Error::CountCheck(format!(
            "{} eigenfrequencies up to {} but at least {expected_min} expected",
            s.len(),
            s.k_max_covered()
        )));
    }
    Ok(())
}

/// Eigenfrequencies of an equilateral graph in `[0, k_max]`.
///
/// With edge length `a` and `T = D⁻¹A` the degree-normalised adjacency
/// operator (loops count twice), every eigenvalue `μ ∈ (−1, 1)` of `T` yields
/// `k = (±arccos μ + 2πn)/a` with the multiplicity of `μ`. At `k = nπ/a` the
/// multiplicity is the nullity of the secular matrix.
pub fn von_below_spectrum(g: &MetricGraph, k_max: f64) -> Result<Spectrum> {
    if !(k_max > 0.0) || !k_max.is_finite() {
        return Err(Error::InvalidKMax(k_max));
    }
    let a = g.common_length(1e-12).ok_or(Error::NotEquilateral)?;
    let m = g.vertex_count();
    let mut adj = DMatrix::<f64>::zeros(m, m);
    for e in g.edges() {
        adj[(e.u, e.v)] += 1.0;
        adj[(e.v, e.u)] += 1.0;
    }
    let inv_sqrt_deg: Vec<f64> = (0..m).map(|v| 1.0 / libm::sqrt(g.degree(v) as f64)).collect();
    let sym = DMatrix::from_fn(m, m, |i, j| adj[(i, j)] * inv_sqrt_deg[i] * inv_sqrt_deg[j]);
    let mus = sym.symmetric_eigenvalues();

    let limit = k_max * (1.0 + 1e-12);
    let mut values = vec![0.0];
    for &mu in mus.iter() {
        if libm::fabs(mu) >= 1.0 - 1e-8 {
            continue;
        }
        let theta = libm::acos(mu);
        for n in 0.. {
            let base = 2.0 * PI * n as f64;
            let lo = (base + theta) / a;
            if lo > limit {
                break;
            }
            values.push(lo);
            let hi = (base + 2.0 * PI - theta) / a;
            if hi <= limit {
                values.push(hi);
            }
        }
    }
    for n in 1.. {
        let k = n as f64 * PI / a;
        if k > limit {
            break;
        }
        values.extend(core::iter::repeat_n(k, nullity(g, k)));
    }
    values.sort_by(f64::total_cmp);
    Spectrum::new(values, k_max, Method::VonBelow, VON_BELOW_TOL)
}

/// Graph families with closed-form spectra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnalyticFamily {
    /// Segment of the given length: `k_j = (j − 1)π/L`.
    Interval { length: f64 },
    /// Single loop: `0`, then `2πn/ℓ` twice each.
    Loop { length: f64 },
    /// Star with `degree` edges of common length `a`: `0`, `(π/2 + nπ)/a`
    /// with multiplicity `degree − 1`, and `nπ/a` simple.
    Star { degree: usize, length: f64 },
}

impl AnalyticFamily {
    fn validate(&self) -> Result<()> {
        let (length, ok) = match *self {
            Self::Interval { length } | Self::Loop { length } => (length, true),
            Self::Star { degree, length } => (length, degree >= 3),
        };
        if !(length > 0.0) || !length.is_finite() || !ok {
            return Err(Error::Domain("analytic family needs length > 0 and star degree >= 3"));
        }
        Ok(())
    }

    /// The family member as a metric graph.
    pub fn graph(&self) -> Result<MetricGraph> {
        self.validate()?;
        match *self {
            Self::Interval { length } => MetricGraph::new("interval", &["a", "b"], &[("a", "b", length)]),
            Self::Loop { length } => MetricGraph::new("loop", &["a"], &[("a", "a", length)]),
            Self::Star { degree, length } => {
                let mut names: Vec<String> = (0..degree).map(|i| format!("leaf{i:03}")).collect();
                let edges: Vec<(String, String, f64)> =
                    names.iter().map(|n| (String::from("center"), n.clone(), length)).collect();
                names.push(String::from("center"));
                MetricGraph::new("star", &names, &edges)
            }
        }
    }

    /// Lazily ordered values, `k = 0` first.
    fn values(&self) -> impl Iterator<Item = f64> {
        let fam = *self;
        let mut n = 0usize;
        let mut pending: Vec<f64> = vec![0.0];
        core::iter::from_fn(move || {
            if pending.is_empty() {
                n += 1;
                let nf = n as f64;
                match fam {
                    Self::Interval { length } => pending.push(nf * PI / length),
                    Self::Loop { length } => pending.extend([2.0 * PI * nf / length; 2]),
                    Self::Star { degree, length } => {
                        pending.push(nf * PI / length);
                        let odd = (nf - 0.5) * PI / length;
                        pending.extend(core::iter::repeat_n(odd, degree - 1));
                    }
                }
            }
            pending.pop()
        })
    }

    /// The first `count` eigenfrequencies.
    pub fn spectrum(&self, count: usize) -> Result<Spectrum> {
        self.validate()?;
        let values: Vec<f64> = self.values().take(count).collect();
        let covered = values.last().copied().unwrap_or(0.0);
        Spectrum::new(values, covered, Method::Analytic, 0.0)
    }

    /// All eigenfrequencies in `[0, k_max]`.
    pub fn spectrum_to(&self, k_max: f64) -> Result<Spectrum> {
        self.validate()?;
        if !(k_max > 0.0) || !k_max.is_finite() {
            return Err(Error::InvalidKMax(k_max));
        }
        let values: Vec<f64> = self.values().take_while(|&k| k <= k_max).collect();
        Spectrum::new(values, k_max, Method::Analytic, 0.0)
    }
}

pub fn analytic_spectrum(family: AnalyticFamily, count: usize) -> Result<Spectrum> {
    family.spectrum(count)
}

/// One named check of a [`ValidationReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Heuristic checks are reported but do not fail the report.
    pub heuristic: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    /// True when every non-heuristic check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.heuristic)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed && !c.heuristic)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Largest elementwise difference between two spectra over the values both
/// cover, or `None` if they disagree on how many values lie in that range.
pub fn max_abs_difference(a: &Spectrum, b: &Spectrum) -> Option<f64> {
    let cover = a.k_max_covered().min(b.k_max_covered()) - 1e-6;
    let (na, nb) = (a.count_up_to(cover), b.count_up_to(cover));
    if na != nb {
        return None;
    }
    Some(
        a.values()[..na]
            .iter()
            .zip(&b.values()[..nb])
            .map(|(x, y)| libm::fabs(x - y))
            .fold(0.0, f64::max),
    )
}

/// Checks a spectrum against the graph it belongs to and, optionally,
/// against a second spectrum of the same graph.
pub fn validate_spectrum(s: &Spectrum, g: &MetricGraph, reference: Option<&Spectrum>) -> ValidationReport {
    let (m, total) = (g.vertex_count() as f64, g.total_length());
    let mut report = ValidationReport::default();

    let violation = s
        .values()
        .iter()
        .enumerate()
        .find(|&(i, &k)| k < ((i + 1) as f64 - m) * PI / total - s.tol());
    report.checks.push(Check {
        name: "lower_estimate",
        passed: violation.is_none(),
        heuristic: false,
        detail: match violation {
            Some((i, k)) => format!("k_{} = {k} < ({} - M)π/ℒ", i + 1, i + 1),
            None => format!("k_j >= (j - M)π/ℒ for all {} values", s.len()),
        },
    });

    let first = s.values().first().copied();
    let second = s.values().get(1).copied();
    let zero_ok = first.is_some_and(|k| k <= s.tol()) && second.is_none_or(|k| k > s.tol());
    report.checks.push(Check {
        name: "zero_simple",
        passed: zero_ok,
        heuristic: false,
        detail: format!("k_1 = {first:?}, k_2 = {second:?}"),
    });

    // counting function within kℒ/π ± M at every value and at the coverage edge
    let mut worst: Option<f64> = None;
    let samples = s.values().iter().copied().chain(core::iter::once(s.k_max_covered()));
    for k in samples {
        let count = s.count_up_to(k) as f64;
        let weyl = k * total / PI;
        if count > weyl + m + 1e-9 || count < weyl - m - 1e-9 {
            worst = Some(k);
            break;
        }
    }
    report.checks.push(Check {
        name: "weyl_window",
        passed: worst.is_none(),
        heuristic: true,
        detail: match worst {
            Some(k) => format!("count at k = {k} outside kℒ/π ± M"),
            None => String::from("count within kℒ/π ± M"),
        },
    });

    // exact count in every gap the accuracy resolves
    let margin = 2.0 * s.tol() + GAP_MIN;
    let mut mismatch = None;
    let mut probed = 0usize;
    for w in s.values().windows(2) {
        if w[1] - w[0] <= margin {
            continue;
        }
        let p = 0.5 * (w[0] + w[1]);
        if let Some(n) = count_below(g, p) {
            probed += 1;
            if n != s.count_up_to(p) {
                mismatch = Some((p, n, s.count_up_to(p)));
                break;
            }
        }
    }
    report.checks.push(Check {
        name: "exact_count",
        passed: mismatch.is_none(),
        heuristic: false,
        detail: match mismatch {
            Some((p, n, c)) => format!("{c} values below k = {p}, the graph has {n}"),
            None => format!("count matches the graph at {probed} probes"),
        },
    });

    if let Some(r) = reference {
        let tol = s.tol() + r.tol();
        let diff = max_abs_difference(s, r);
        report.checks.push(Check {
            name: "method_agreement",
            passed: diff.is_some_and(|d| d <= tol),
            heuristic: false,
            detail: match diff {
                Some(d) => format!("{} vs {}: max |Δk| = {d:e} (tol {tol:e})", s.method().as_str(), r.method().as_str()),
                None => String::from("different number of values in the common range"),
            },
        });
    }
    report
}
