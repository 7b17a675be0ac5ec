//! Error bounds for truncated trace sums and the optimal choice of test
//! function order and eigenfrequency count.
//!
//! Notation used throughout: `excess = J − M` (eigenfrequencies beyond the
//! vertex count), `lt = ℒ·t`, `rho = 2tℒ`.

use core::f64::consts::{E, PI};
use core::fmt;

use crate::error::{Error, Result};
use crate::spectrum::Spectrum;
use crate::testfn::{factorial_squared, TestFunction};

/// Bound on the tail of the truncated sum for the cosine-power function of
/// order `d`, before the Stirling-type simplification:
/// `(d!)² (2·lt)^{2d+1} / (2πd (excess − 2·lt·d)^{2d})`.
pub fn tail_bound(d: u32, excess: f64, lt: f64) -> Result<f64> {
    if d == 0 {
        return Err(Error::Domain("order must be positive"));
    }
    let df = f64::from(d);
    let gap = excess - 2.0 * lt * df;
    if !(gap > 0.0) || !(lt > 0.0) {
        return Err(Error::Domain("tail bound needs excess > 2·lt·d and lt > 0"));
    }
    Ok(factorial_squared(d) * libm::pow(2.0 * lt, 2.0 * df + 1.0) / (2.0 * PI * df * libm::pow(gap, 2.0 * df)))
}

/// Tail bound for any supported test function.
///
/// The triangular function uses the majorant `16/k²`, whose integrated form is
/// `32·lt² / (π²·excess)`.
pub fn tail_bound_for(tf: &TestFunction, excess: f64, lt: f64) -> Result<f64> {
    match tf.order() {
        Some(d) => tail_bound(d, excess, lt),
        None => {
            if excess > 0.0 && lt > 0.0 {
                Ok(32.0 * lt * lt / (PI * PI * excess))
            } else {
                Err(Error::Domain("tail bound needs excess > 0 and lt > 0"))
            }
        }
    }
}

/// `ε(μ,γ,α,β) = α^{2α} e^{−2α+1/6} γ^{2α+1} / (β − μ − γα)^{2α}`.
pub fn epsilon(mu: f64, gamma: f64, alpha: f64, beta: f64) -> Result<f64> {
    let gap = beta - mu - gamma * alpha;
    if !(alpha > 0.0 && gamma > 0.0 && gap > 0.0) {
        return Err(Error::Domain("epsilon needs alpha, gamma > 0 and beta > mu + gamma·alpha"));
    }
    let a2 = 2.0 * alpha;
    Ok(libm::pow(alpha, a2) * libm::exp(-a2 + 1.0 / 6.0) * libm::pow(gamma, a2 + 1.0) / libm::pow(gap, a2))
}

/// The unique `β > M + ρα` with `ε(M, ρ, α, β) = eps_bar`.
pub fn beta_continuous(eps_bar: f64, m: f64, rho: f64, alpha: f64) -> Result<f64> {
    if !(eps_bar > 0.0 && eps_bar < 1.0) {
        return Err(Error::Domain("eps_bar must lie in (0, 1)"));
    }
    if !(alpha > 0.0 && rho > 0.0) {
        return Err(Error::Domain("alpha and rho must be positive"));
    }
    let base = libm::exp(1.0 / 6.0) * rho / eps_bar;
    Ok(m + rho * alpha * (1.0 + libm::pow(base, 1.0 / (2.0 * alpha)) / E))
}

/// `W(1)`, the positive solution of `w·e^w = 1`, by Newton iteration.
pub fn lambert_w1() -> f64 {
    let mut w = 0.5_f64;
    for _ in 0..64 {
        let ew = libm::exp(w);
        let step = (w * ew - 1.0) / (ew * (w + 1.0));
        w -= step;
        if libm::fabs(step) < 1e-16 {
            break;
        }
    }
    w
}

/// Continuous minimiser of `α ↦ β(eps_bar, M, ρ, α)`.
pub fn alpha_star(eps_bar: f64, rho: f64) -> Result<f64> {
    if !(eps_bar > 0.0 && eps_bar < 1.0) || !(rho > 0.0) {
        return Err(Error::Domain("alpha_star needs eps_bar in (0,1) and rho > 0"));
    }
    let arg = libm::exp(1.0 / 6.0) * rho / eps_bar;
    if !(arg > 1.0) {
        return Err(Error::Domain("alpha_star needs e^{1/6}·rho/eps_bar > 1"));
    }
    Ok(libm::log(arg) / (2.0 * (1.0 + lambert_w1())))
}

/// Optimal order `d*` and eigenfrequency count `J*` for given `M`, `ρ`, `ε̄`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalOrder {
    pub order: u32,
    pub count: usize,
    pub alpha_star: f64,
}

pub fn optimal_order(eps_bar: f64, m: usize, rho: f64) -> Result<OptimalOrder> {
    let a = alpha_star(eps_bar, rho)?;
    let mf = m as f64;
    let ceil_beta = |d: u32| -> Result<usize> {
        Ok(libm::ceil(beta_continuous(eps_bar, mf, rho, f64::from(d))?) as usize)
    };
    let lo = (libm::floor(a) as u32).max(1);
    let hi = (libm::ceil(a) as u32).max(1);
    let count = ceil_beta(lo)?.min(ceil_beta(hi)?);
    let mut order = hi;
    for d in 1..=hi {
        if ceil_beta(d)? == count {
            order = d;
            break;
        }
    }
    Ok(OptimalOrder { order, count, alpha_star: a })
}

/// Prior bounds and target a plan was derived from, with the certifying values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanCertificate {
    pub eps_bar: f64,
    pub max_vertices: usize,
    pub max_length: f64,
    pub min_orbit_lower: f64,
    pub rho: f64,
    pub alpha_star: f64,
    /// `ε(M̄, ρ, d, J)`, at most `eps_bar`.
    pub epsilon: f64,
    /// `ε(M̄, ρ, d, J − 1)`, above `eps_bar` (`+inf` outside the domain).
    pub epsilon_below: f64,
}

/// Scaling `t`, order `d`, count `J` and admissible noise `t / (8J)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecoveryPlan {
    pub t: f64,
    pub order: u32,
    pub count: usize,
    pub delta_max: f64,
    pub certificate: Option<PlanCertificate>,
}

impl RecoveryPlan {
    /// A plan with hand-picked parameters and no prior certificate.
    pub fn manual(t: f64, order: u32, count: usize) -> Result<Self> {
        if !(t > 0.0) || count == 0 {
            return Err(Error::Domain("manual plan needs t > 0 and J >= 1"));
        }
        crate::testfn::Order::new(order)?;
        Ok(Self { t, order, count, delta_max: t / (8.0 * count as f64), certificate: None })
    }

    pub fn test_function(&self) -> TestFunction {
        TestFunction::cosine_power(self.order).expect("plan order validated at construction")
    }

    /// `ε(M̄, 2tℒ̄, d, J) + 2δJ/t` when a certificate exists.
    pub fn noisy_bound(&self, delta: f64) -> Option<f64> {
        self.certificate.map(|c| c.epsilon + 2.0 * delta * self.count as f64 / self.t)
    }
}

impl fmt::Display for RecoveryPlan {
    /// Flat `key=value` lines.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "t={}", self.t)?;
        writeln!(f, "d={}", self.order)?;
        writeln!(f, "J={}", self.count)?;
        writeln!(f, "delta_max={:e}", self.delta_max)?;
        if let Some(c) = &self.certificate {
            writeln!(f, "eps_bar={}", c.eps_bar)?;
            writeln!(f, "M_bar={}", c.max_vertices)?;
            writeln!(f, "L_bar={}", c.max_length)?;
            writeln!(f, "lmin_lower={}", c.min_orbit_lower)?;
            writeln!(f, "rho={}", c.rho)?;
            writeln!(f, "alpha_star={}", c.alpha_star)?;
            writeln!(f, "epsilon={}", c.epsilon)?;
            writeln!(f, "epsilon_J_minus_1={}", c.epsilon_below)?;
        }
        Ok(())
    }
}

/// Smallest-`J` plan guaranteeing `ε ≤ eps_bar` for every graph with at most
/// `max_vertices` vertices, total length at most `max_length` and shortest
/// orbit at least `min_orbit_lower`.
pub fn optimal_plan(eps_bar: f64, max_vertices: usize, max_length: f64, min_orbit_lower: f64) -> Result<RecoveryPlan> {
    if !(max_length > 0.0 && min_orbit_lower > 0.0) {
        return Err(Error::Domain("length priors must be positive"));
    }
    let t = 1.0 / min_orbit_lower;
    let rho = 2.0 * t * max_length;
    let opt = optimal_order(eps_bar, max_vertices, rho)?;
    let (m, d) = (max_vertices as f64, f64::from(opt.order));
    let eps_at = epsilon(m, rho, d, opt.count as f64)?;
    let eps_below = epsilon(m, rho, d, opt.count as f64 - 1.0).unwrap_or(f64::INFINITY);
    Ok(RecoveryPlan {
        t,
        order: opt.order,
        count: opt.count,
        delta_max: t / (8.0 * opt.count as f64),
        certificate: Some(PlanCertificate {
            eps_bar,
            max_vertices,
            max_length,
            min_orbit_lower,
            rho,
            alpha_star: opt.alpha_star,
            epsilon: eps_at,
            epsilon_below: eps_below,
        }),
    })
}

/// Smallest `J > m` whose tail bound at `lt` is below `threshold`.
pub fn j_min(tf: &TestFunction, m: usize, lt: f64, threshold: f64) -> Result<usize> {
    if !(threshold > 0.0) || !(lt > 0.0) {
        return Err(Error::Domain("j_min needs threshold > 0 and lt > 0"));
    }
    let ok = |j: usize| {
        tail_bound_for(tf, (j - m) as f64, lt).map(|b| b < threshold).unwrap_or(false)
    };
    let mut hi = m + 1;
    while !ok(hi) {
        hi = m + 2 * (hi - m);
        if hi > usize::MAX / 4 {
            return Err(Error::Domain("j_min search overflow"));
        }
    }
    let mut lo = m; // ok(lo) treated as false: J must exceed m
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Upper bound on total length from the first `count` eigenfrequencies and
/// an edge-count bound: `min_{2≤j≤J} (j + N̄)π / k_j`.
pub fn length_bound(max_edges: usize, s: &Spectrum, count: usize) -> Result<f64> {
    if count < 2 {
        return Err(Error::Domain("length bound needs J >= 2"));
    }
    if s.len() < count {
        return Err(Error::InsufficientSpectrum { needed: count, available: s.len() });
    }
    let values = s.values();
    if !(values[1] > 0.0) {
        return Err(Error::Domain("length bound needs k_2 > 0"));
    }
    Ok((2..=count)
        .map(|j| (j + max_edges) as f64 * PI / values[j - 1])
        .fold(f64::INFINITY, f64::min))
}
