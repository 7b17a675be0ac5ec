//! Truncated trace sums `S_J(t)`, measurement-noise injection and
//! nearest-integer recovery of the Euler characteristic.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::planner::RecoveryPlan;
use crate::spectrum::Spectrum;
use crate::sum::CompensatedSum;
use crate::testfn::TestFunction;

/// SplitMix64: `state += 0x9E3779B97F4A7C15`, then the output is `state`
/// mixed by two xor-shift-multiply rounds (constants `0xBF58476D1CE4E5B9`,
/// `0x94D049BB133111EB`) and a final `z ^ (z >> 31)`.
///
/// Fixed here so noisy spectra are reproducible bit-for-bit on every platform.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform on `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Uniform measurement error on `[−delta, delta]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    pub delta: f64,
    pub seed: u64,
}

impl NoiseModel {
    pub fn new(delta: f64, seed: u64) -> Result<Self> {
        if !(delta >= 0.0) || !delta.is_finite() {
            return Err(Error::Domain("noise delta must be finite and nonnegative"));
        }
        Ok(Self { delta, seed })
    }
}

/// `S_J(t) = 2 + 2 Σ_{j=2}^{J} Re f̂(k_j / t)`.
///
/// Slot `j = 1` is the zero eigenfrequency and always contributes the exact
/// constant `2·Re f̂(0) = 2`, whatever value the spectrum stores there.
pub fn truncated_sum(s: &Spectrum, tf: &TestFunction, t: f64, count: usize) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain("scaling t must be positive"));
    }
    if count == 0 {
        return Err(Error::Domain("J must be at least 1"));
    }
    if count > s.len() {
        return Err(Error::InsufficientSpectrum { needed: count, available: s.len() });
    }
    let mut acc = CompensatedSum::new();
    acc.add(2.0 * tf.re_fourier(0.0));
    for &k in &s.values()[1..count] {
        acc.add(2.0 * tf.re_fourier(k / t));
    }
    Ok(acc.value())
}

/// Adds i.i.d. uniform noise to every positive eigenfrequency.
///
/// `k_1 = 0` is kept exact, results are clamped at 0 and re-sorted, so
/// `|k̃_j − k_j| <= delta` still holds index by index.
pub fn perturb_spectrum(s: &Spectrum, noise: &NoiseModel) -> Spectrum {
    let mut rng = SplitMix64::new(noise.seed);
    let mut values: Vec<f64> = s
        .values()
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            if i == 0 && k == 0.0 {
                return 0.0;
            }
            let e = noise.delta * (2.0 * rng.next_f64() - 1.0);
            (k + e).max(0.0)
        })
        .collect();
    values.sort_by(f64::total_cmp);
    s.with_values(values, s.tol() + noise.delta)
}

/// Truncated sum together with its rounded value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Recovery {
    pub sum: f64,
    pub chi: i64,
}

/// Applies a plan: `nint(S_J(t))` with the plan's order, scaling and count.
///
/// The spectrum's recorded accuracy must keep the total error below ½. For a
/// certified plan that is `ε + 2·tol·J/t < ½`, which admits `delta_max` plus
/// the solver tolerance; a manual plan only accepts `tol <= delta_max`.
pub fn recover(s: &Spectrum, plan: &RecoveryPlan) -> Result<Recovery> {
    let admissible = admissible_error(plan);
    let ok = match plan.certificate {
        Some(_) => s.tol() < admissible,
        None => s.tol() <= admissible,
    };
    if !ok {
        return Err(Error::NoiseExceedsPlan { delta: s.tol(), delta_max: admissible });
    }
    let sum = truncated_sum(s, &plan.test_function(), plan.t, plan.count)?;
    Ok(Recovery { sum, chi: nint(sum) })
}

/// Largest eigenfrequency error a plan tolerates (see [`recover`]).
pub fn admissible_error(plan: &RecoveryPlan) -> f64 {
    match plan.certificate {
        Some(c) => (0.5 - c.epsilon) * plan.t / (2.0 * plan.count as f64),
        None => plan.delta_max,
    }
}

pub fn recover_chi(s: &Spectrum, plan: &RecoveryPlan) -> Result<i64> {
    recover(s, plan).map(|r| r.chi)
}

/// Nearest integer, halves rounded away from zero.
pub fn nint(x: f64) -> i64 {
    libm::round(x) as i64
}
