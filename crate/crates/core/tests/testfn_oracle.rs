mod common;

use std::f64::consts::PI;

use common::integrate;
use proptest::prelude::*;
use qgchi_core::TestFunction;

fn phi(d: u32) -> TestFunction {
    TestFunction::cosine_power(d).unwrap()
}

fn log_grid() -> Vec<f64> {
    let mut ks = vec![0.0, 1.0, PI, 2.0 * PI, 4.0 * PI, 6.0 * PI];
    ks.extend((0..40).map(|i| 1e-3 * 10f64.powf(i as f64 * 6.0 / 39.0)));
    ks
}

#[test]
fn transforms_match_quadrature() {
    let mut fns = vec![TestFunction::Triangular];
    fns.extend((1..=4).map(phi));
    for tf in fns {
        for k in log_grid() {
            let re = integrate(&|l| tf.eval(l) * (k * l).cos(), 0.0, 1.0, 1e-13);
            let im = integrate(&|l| tf.eval(l) * (k * l).sin(), 0.0, 1.0, 1e-13);
            let f = tf.fourier(k);
            assert!((f.re - re).abs() < 1e-10, "{tf:?} k={k} re {} vs {re}", f.re);
            assert!((f.im - im).abs() < 1e-10, "{tf:?} k={k} im {} vs {im}", f.im);
            assert!((tf.re_fourier(k) - re).abs() < 1e-10, "{tf:?} k={k}");
        }
    }
}

#[test]
fn re_fourier_of_phi1_at_one() {
    let q = integrate(&|l| (1.0 - (2.0 * PI * l).cos()) * l.cos(), 0.0, 1.0, 1e-14);
    assert!((phi(1).re_fourier(1.0) - q).abs() < 1e-12);
}

#[test]
fn unit_mass() {
    for d in 1..=6 {
        let mass = integrate(&|l| phi(d).eval(l), 0.0, 1.0, 1e-14);
        assert!((mass - 1.0).abs() < 1e-12, "d={d} mass={mass}");
    }
    let mass = integrate(&|l| TestFunction::Triangular.eval(l), 0.0, 1.0, 1e-14);
    assert!((mass - 1.0).abs() < 1e-12);
}

#[test]
fn endpoint_flatness() {
    // φ_d vanishes to order 2d at both ends, so φ_d(h)/h^{2d} stays bounded
    for d in 1..=6u32 {
        let tf = phi(d);
        let c = tf.normalization() * (2.0 * PI * PI).powi(d as i32);
        for h in [1e-2, 1e-3] {
            let ratio = tf.eval(h) / h.powi(2 * d as i32);
            assert!((ratio / c - 1.0).abs() < 1e-2, "d={d} h={h}");
            let ratio = tf.eval(1.0 - h) / h.powi(2 * d as i32);
            assert!((ratio / c - 1.0).abs() < 1e-2, "d={d} h={h}");
        }
    }
}

#[test]
fn majorant_dominates_on_dense_sample() {
    for d in 1..=6u32 {
        let tf = phi(d);
        let k0 = 2.0 * PI * d as f64 + 1e-3;
        for i in 0..10_000 {
            let k = k0 + i as f64 * 0.05;
            let m = tf.majorant(k).unwrap();
            assert!(tf.re_fourier(k).abs() <= m * (1.0 + 1e-12), "d={d} k={k}");
            assert!(tf.majorant(k + 0.05).unwrap() <= m);
        }
    }
    for i in 1..=10_000 {
        let k = i as f64 * 0.01;
        let tf = TestFunction::Triangular;
        assert!(tf.re_fourier(k).abs() <= tf.majorant(k).unwrap() * (1.0 + 1e-12));
    }
}

proptest! {
    #[test]
    fn real_part_agrees(k in -200.0f64..200.0, d in 1u32..=12) {
        let tf = phi(d);
        let scale = tf.fourier(k).norm_sqr().sqrt().max(1e-300);
        prop_assert!((tf.fourier(k).re - tf.re_fourier(k)).abs() <= 1e-12 * scale.max(1.0));
    }

    #[test]
    fn transform_is_hermitian(k in 0.0f64..500.0, d in 1u32..=6) {
        let tf = phi(d);
        let (a, b) = (tf.fourier(k), tf.fourier(-k));
        prop_assert!((a.re - b.re).abs() < 1e-13 && (a.im + b.im).abs() < 1e-13);
    }

    #[test]
    fn bounded_by_mass(k in -1e4f64..1e4, d in 1u32..=12) {
        prop_assert!(phi(d).fourier(k).norm_sqr() <= 1.0 + 1e-12);
        prop_assert!(TestFunction::Triangular.fourier(k).norm_sqr() <= 1.0 + 1e-12);
    }

    #[test]
    fn time_domain_nonnegative(l in -0.5f64..1.5, d in 1u32..=12) {
        prop_assert!(phi(d).eval(l) >= 0.0);
        prop_assert!(TestFunction::Triangular.eval(l) >= 0.0);
    }
}
