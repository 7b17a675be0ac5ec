use proptest::prelude::*;
use qgchi_core::planner::{
    alpha_star, beta_continuous, epsilon, j_min, lambert_w1, length_bound, optimal_order, tail_bound,
};
use qgchi_core::{optimal_plan, AnalyticFamily, TestFunction};

fn phi(d: u32) -> TestFunction {
    TestFunction::cosine_power(d).unwrap()
}

#[test]
fn golden_epsilon_values() {
    // independent high-precision evaluation
    assert!((epsilon(2.0, 12.0, 1.0, 48.0).unwrap() - 0.238_990).abs() < 1e-6);
    assert!((epsilon(2.0, 12.0, 1.0, 47.0).unwrap() - 0.253_693).abs() < 1e-6);
    assert!((tail_bound(1, 46.0, 6.0).unwrap() - 0.237_906_35).abs() < 1e-8);
    assert!(tail_bound(1, 46.0, 6.0).unwrap() <= epsilon(2.0, 12.0, 1.0, 48.0).unwrap());
    assert!((beta_continuous(0.25, 2.0, 12.0, 1.0).unwrap() - 47.2429).abs() < 1e-3);
    assert!((beta_continuous(0.25, 5.0, 10.0, 1.0).unwrap() - 40.2887).abs() < 1e-3);
    assert!((alpha_star(0.25, 12.0).unwrap() - 1.288_29).abs() < 1e-4);
    assert!((alpha_star(0.25, 10.0).unwrap() - 1.230_12).abs() < 1e-4);
    assert!((lambert_w1() - 0.567_143_290_4).abs() < 1e-10);
}

#[test]
fn alpha_star_minimises_beta() {
    for rho in [12.0, 50.0, 400.0, 1e4] {
        let a = alpha_star(0.25, rho).unwrap();
        let b = |x: f64| beta_continuous(0.25, 3.0, rho, x).unwrap();
        assert!(b(a - 1e-3) > b(a) && b(a + 1e-3) > b(a), "rho={rho}");
    }
}

#[test]
fn order_table() {
    // (rho, d*, J* − M at exactly rho)
    let rows = [(2.0, 1, 5), (15.6, 1, 65), (16.5, 2, 70), (421.0, 2, 2911), (423.0, 3, 2926), (1e4, 3, 96_360)];
    for (rho, d, excess) in rows {
        for m in [0usize, 3, 10] {
            let o = optimal_order(0.25, m, rho).unwrap();
            assert_eq!((o.order, o.count - m), (d, excess), "rho={rho} m={m}");
        }
    }
    // both order changes happen strictly inside the table's gaps
    for (lo, hi, from, to) in [(15.6, 16.5, 1, 2), (421.0, 423.0, 2, 3)] {
        let orders: Vec<(f64, u32)> = (0..=2000)
            .map(|i| lo + (hi - lo) * i as f64 / 2000.0)
            .map(|r| (r, optimal_order(0.25, 0, r).unwrap().order))
            .collect();
        assert!(orders.iter().all(|&(_, d)| d == from || d == to));
        let first = orders.iter().find(|o| o.1 == to).unwrap().0;
        let last = orders.iter().rev().find(|o| o.1 == from).unwrap().0;
        assert!(first > lo && last < hi, "{first} {last}");
    }
}

#[test]
fn j_min_consistency() {
    assert_eq!(j_min(&phi(1), 2, 6.0, 0.25).unwrap(), 48);
    let half = j_min(&phi(1), 2, 6.0, 0.5).unwrap();
    assert!(half <= 48 && half > 2 + 12);
    let one = j_min(&phi(1), 2, 6.0, 1.0).unwrap();
    assert!(one <= half);
    let psi = j_min(&TestFunction::Triangular, 2, 6.0, 0.25).unwrap();
    assert!(psi > 48, "{psi}");
}

#[test]
fn length_bound_examples() {
    let s = AnalyticFamily::Interval { length: 1.0 }.spectrum(4).unwrap();
    assert!((length_bound(1, &s, 4).unwrap() - 5.0 / 3.0).abs() < 1e-14);
    let s = AnalyticFamily::Loop { length: 1.0 }.spectrum(3).unwrap();
    assert!((length_bound(1, &s, 3).unwrap() - 1.5).abs() < 1e-14);
    assert!(length_bound(1, &s, 1).is_err());
    let s = AnalyticFamily::Star { degree: 3, length: 1.0 }.spectrum(100).unwrap();
    assert!(length_bound(3, &s, 100).unwrap() >= 3.0);
}

proptest! {
    #[test]
    fn plan_is_minimal(eps in 0.05f64..0.45, m in 1usize..20, big_l in 1.0f64..200.0, lmin in 0.2f64..3.0) {
        let p = optimal_plan(eps, m, big_l, lmin).unwrap();
        let c = p.certificate.unwrap();
        prop_assert!(c.epsilon <= eps * (1.0 + 1e-12));
        prop_assert!(c.epsilon_below > eps);
        prop_assert!((p.delta_max * 8.0 * p.count as f64 - p.t).abs() <= 1e-15 * p.t);
        let a = c.alpha_star;
        let (lo, hi) = ((a.floor() as u32).max(1), (a.ceil() as u32).max(1));
        for d in [lo, hi] {
            let below = epsilon(m as f64, c.rho, d as f64, p.count as f64 - 1.0).unwrap_or(f64::INFINITY);
            prop_assert!(below > eps);
        }
        for d in 1..=hi + 3 {
            let b = beta_continuous(eps, m as f64, c.rho, d as f64).unwrap();
            prop_assert!(b.ceil() as usize >= p.count);
        }
    }

    #[test]
    fn plan_monotone(eps in 0.05f64..0.45, m in 0usize..20, rho in 1.0f64..500.0, grow in 1.0f64..2.0) {
        let base = optimal_order(eps, m, rho).unwrap().count;
        prop_assert!(optimal_order(eps, m, rho * grow).unwrap().count >= base);
        prop_assert!(optimal_order(eps / grow, m, rho).unwrap().count >= base);
    }

    #[test]
    fn stirling_direction(d in 1u32..6, m in 0usize..20, lt in 0.5f64..50.0, slack in 0.01f64..100.0) {
        let beta = m as f64 + 2.0 * lt * d as f64 + slack;
        let tail = tail_bound(d, beta - m as f64, lt).unwrap();
        let eps = epsilon(m as f64, 2.0 * lt, d as f64, beta).unwrap();
        prop_assert!(tail <= eps * (1.0 + 1e-12));
    }

    #[test]
    fn epsilon_decreasing_in_beta(m in 0.0f64..20.0, gamma in 0.5f64..50.0, alpha in 0.5f64..5.0, gap in 0.01f64..100.0) {
        let beta = m + gamma * alpha + gap;
        prop_assert!(epsilon(m, gamma, alpha, beta + 0.5).unwrap() < epsilon(m, gamma, alpha, beta).unwrap());
    }

    #[test]
    fn beta_inverts_epsilon(eps in 0.01f64..0.99, m in 0.0f64..50.0, rho in 0.5f64..1e3, alpha in 0.3f64..6.0) {
        let b = beta_continuous(eps, m, rho, alpha).unwrap();
        prop_assert!((epsilon(m, rho, alpha, b).unwrap() - eps).abs() < 1e-10);
    }

    #[test]
    fn tail_bound_monotone(d in 1u32..6, lt in 0.5f64..20.0, slack in 0.01f64..100.0) {
        let x = 2.0 * lt * d as f64 + slack;
        prop_assert!(tail_bound(d, x + 1.0, lt).unwrap() < tail_bound(d, x, lt).unwrap());
        prop_assert!(tail_bound(d, x, lt * 0.99).unwrap() < tail_bound(d, x, lt).unwrap());
    }
}
