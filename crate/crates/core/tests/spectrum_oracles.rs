mod common;

use std::f64::consts::PI;

use common::{complete, k33, k5_pendant, lasso};
use proptest::prelude::*;
use qgchi_core::spectrum::{max_abs_difference, secular_spectrum_count, validate_spectrum};
use qgchi_core::{secular_spectrum, von_below_spectrum, AnalyticFamily, MetricGraph, Spectrum};

fn lower_estimate_holds(s: &Spectrum, g: &MetricGraph) -> bool {
    let (m, total) = (g.vertex_count() as f64, g.total_length());
    s.values().iter().enumerate().all(|(i, &k)| k >= ((i + 1) as f64 - m) * PI / total - 1e-9)
}

fn first(s: Spectrum, n: usize) -> Spectrum {
    s.truncated(n).unwrap()
}

#[test]
fn k5_secular_matches_von_below() {
    let g = complete(5);
    let sec = secular_spectrum_count(&g, 50).unwrap();
    let vb = first(von_below_spectrum(&g, sec.values()[49] + 0.5).unwrap(), 50);
    assert!(max_abs_difference(&sec, &vb).unwrap() < 1e-8);
    assert!(lower_estimate_holds(&sec, &g));
    let mu = (-0.25f64).acos();
    let count = vb.values().iter().filter(|&&k| (k - mu).abs() < 1e-9).count();
    assert_eq!(count, 4);
    assert!(validate_spectrum(&sec, &g, Some(&vb)).passed());
}

#[test]
fn lasso_secular_matches_subdivided_von_below() {
    let g = lasso();
    let fine = g.equilateral_refinement(16).unwrap();
    assert_eq!(fine.edge_count(), 12);
    let sec = secular_spectrum_count(&g, 50).unwrap();
    let vb = first(von_below_spectrum(&fine, sec.values()[49] + 0.5).unwrap(), 50);
    assert!(max_abs_difference(&sec, &vb).unwrap() < 1e-8, "{:?}", max_abs_difference(&sec, &vb));
    assert!(lower_estimate_holds(&sec, &g));
    assert!(lower_estimate_holds(&vb, &fine));
}

#[test]
fn secular_matches_closed_forms() {
    let families = [
        AnalyticFamily::Interval { length: 1.0 },
        AnalyticFamily::Interval { length: 2.5 },
        AnalyticFamily::Loop { length: 1.0 },
        AnalyticFamily::Loop { length: 0.7 },
        AnalyticFamily::Star { degree: 3, length: 1.0 },
        AnalyticFamily::Star { degree: 5, length: 0.5 },
    ];
    for fam in families {
        let g = fam.graph().unwrap();
        let sec = secular_spectrum(&g, 40.0).unwrap();
        let exact = fam.spectrum_to(40.0).unwrap();
        assert_eq!(sec.len(), exact.len(), "{fam:?}");
        assert!(max_abs_difference(&sec, &exact).unwrap() < 1e-10, "{fam:?}");
        assert!(lower_estimate_holds(&sec, &g));
        assert!(validate_spectrum(&sec, &g, Some(&exact)).passed(), "{fam:?}");
    }
}

#[test]
fn equilateral_test_graphs_agree() {
    for g in [complete(4), k5_pendant(), k33()] {
        let sec = secular_spectrum(&g, 25.0).unwrap();
        let vb = von_below_spectrum(&g, 25.0).unwrap();
        assert_eq!(sec.len(), vb.len(), "{}", g.name());
        assert!(max_abs_difference(&sec, &vb).unwrap() < 1e-8, "{}", g.name());
    }
}

#[test]
fn degree_two_vertex_is_invisible() {
    let g = lasso();
    let base = secular_spectrum(&g, 20.0).unwrap();
    let split = secular_spectrum(&g.subdivide_edge(1, 1.7).unwrap(), 20.0).unwrap();
    assert_eq!(base.len(), split.len());
    assert!(max_abs_difference(&base, &split).unwrap() < 1e-8);
    let split = secular_spectrum(&g.subdivide_edge(0, 0.3).unwrap(), 20.0).unwrap();
    assert!(max_abs_difference(&base, &split).unwrap() < 1e-8);
}

#[test]
fn weyl_window_on_samples() {
    for g in [lasso(), complete(5), k33()] {
        let s = secular_spectrum(&g, 30.0).unwrap();
        let (m, n, total) = (g.vertex_count() as f64, g.edge_count() as f64, g.total_length());
        for i in 1..60 {
            let k = i as f64 * 0.5;
            let count = s.count_up_to(k) as f64;
            assert!(count >= k * total / PI - n - 1e-9);
            assert!(count <= k * total / PI + m + 1e-9);
        }
    }
}

fn small_graph() -> impl Strategy<Value = MetricGraph> {
    (2usize..5, prop::collection::vec((0usize..5, 0usize..5, 0.3f64..2.0), 0..4), prop::collection::vec(0.3f64..2.0, 4))
        .prop_map(|(m, extra, tree)| {
            let names: Vec<String> = (0..m).map(|i| format!("v{i}")).collect();
            // spanning path keeps the graph connected
            let mut edges: Vec<(String, String, f64)> =
                (1..m).map(|i| (names[i - 1].clone(), names[i].clone(), tree[i - 1])).collect();
            for (a, b, l) in extra {
                edges.push((names[a % m].clone(), names[b % m].clone(), l));
            }
            MetricGraph::new("random", &names, &edges).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scaling_divides_eigenfrequencies(g in small_graph(), c in 0.5f64..2.0) {
        let s = secular_spectrum_count(&g, 15).unwrap();
        let sc = secular_spectrum_count(&g.scaled(c).unwrap(), 15).unwrap();
        for (a, b) in s.values().iter().zip(sc.values()) {
            prop_assert!((a / c - b).abs() < 1e-8 * (1.0 + a));
        }
    }

    #[test]
    fn secular_spectra_pass_validation(g in small_graph()) {
        let s = secular_spectrum_count(&g, 20).unwrap();
        prop_assert!(lower_estimate_holds(&s, &g));
        prop_assert!(validate_spectrum(&s, &g, None).check("lower_estimate").unwrap().passed);
        prop_assert!(validate_spectrum(&s, &g, None).check("zero_simple").unwrap().passed);
    }

    #[test]
    fn subdivision_keeps_spectrum(g in small_graph(), e in 0usize..8, frac in 0.1f64..0.9) {
        let e = e % g.edge_count();
        let h = g.subdivide_edge(e, frac * g.edges()[e].length).unwrap();
        let a = secular_spectrum_count(&g, 15).unwrap();
        let b = secular_spectrum_count(&h, 15).unwrap();
        prop_assert!(max_abs_difference(&a, &b).unwrap() < 1e-8);
    }
}
