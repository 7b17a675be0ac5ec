#![allow(dead_code)]

use qgchi_core::MetricGraph;

pub fn lasso() -> MetricGraph {
    MetricGraph::new("lasso", &["a", "b"], &[("a", "a", 1.0), ("a", "b", 5.0)]).unwrap()
}

pub fn complete(n: usize) -> MetricGraph {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((names[i].clone(), names[j].clone(), 1.0));
        }
    }
    MetricGraph::new(&format!("K{n}"), &names, &edges).unwrap()
}

pub fn k5_pendant() -> MetricGraph {
    let mut names: Vec<String> = (0..5).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            let v = if (i, j) == (3, 4) { "p".to_string() } else { names[j].clone() };
            edges.push((names[i].clone(), v, 1.0));
        }
    }
    names.push("p".into());
    MetricGraph::new("K5-pendant", &names, &edges).unwrap()
}

pub fn k33() -> MetricGraph {
    let names = ["a0", "a1", "a2", "b0", "b1", "b2"];
    let mut edges = Vec::new();
    for a in &names[..3] {
        for b in &names[3..] {
            edges.push((*a, *b, 1.0));
        }
    }
    MetricGraph::new("K33", &names, &edges).unwrap()
}

/// Adaptive Simpson quadrature.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn step(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    // split into panels so the oscillation is resolved before adapting
    let panels = 64;
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| {
            let (x0, x1) = (a + i as f64 * h, a + (i + 1) as f64 * h);
            let (f0, f1, fm) = (f(x0), f(x1), f(0.5 * (x0 + x1)));
            let whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
            step(f, x0, x1, f0, fm, f1, whole, tol / panels as f64, 40)
        })
        .sum()
}
