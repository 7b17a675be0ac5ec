//! Admissible test functions on `[0, 1]` and their Fourier transforms.
//!
//! The transform convention is `f̂(k) = ∫ f(ℓ) e^{ikℓ} dℓ`. Rescaled versions
//! `t·f(t·ℓ)` are handled by callers evaluating transforms at `k / t`.

use core::f64::consts::PI;

use nalgebra::Complex;

use crate::error::{Error, Result};

pub const MAX_ORDER: u32 = 12;

// 2π split for accurate k - 2πm near the removable singularities.
const TWO_PI_HI: f64 = core::f64::consts::TAU;
const TWO_PI_LO: f64 = 2.449_293_598_294_706_4e-16;

/// Width of the window around a removable singularity where the limit form is used.
const SINGULAR_WINDOW: f64 = 1e-4;

/// Order of the cosine-power family, `1..=12`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Order(u32);

impl Order {
    pub fn new(d: u32) -> Result<Self> {
        if (1..=MAX_ORDER).contains(&d) {
            Ok(Self(d))
        } else {
            Err(Error::UnsupportedOrder(d))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestFunction {
    /// `ψ(ℓ) = 4ℓ` on `[0, ½]`, `4(1 − ℓ)` on `[½, 1]`.
    Triangular,
    /// `φ_d(ℓ) = C_d (1 − cos 2πℓ)^d` on `[0, 1]`.
    CosinePower(Order),
}

pub(crate) fn factorial(n: u32) -> u128 {
    (1..=u128::from(n)).product()
}

/// `(d!)²` as a float.
pub(crate) fn factorial_squared(d: u32) -> f64 {
    let f = factorial(d);
    (f * f) as f64
}

/// `sin(z) / z`.
pub(crate) fn sinc(z: f64) -> f64 {
    if libm::fabs(z) < 1e-4 {
        let z2 = z * z;
        1.0 - z2 / 6.0 + z2 * z2 / 120.0
    } else {
        libm::sin(z) / z
    }
}

impl TestFunction {
    pub fn cosine_power(d: u32) -> Result<Self> {
        Order::new(d).map(Self::CosinePower)
    }

    pub fn order(&self) -> Option<u32> {
        match self {
            Self::Triangular => None,
            Self::CosinePower(d) => Some(d.get()),
        }
    }

    /// `C_d = 2^d (d!)² / (2d)!`; 1 for the triangular function.
    pub fn normalization(&self) -> f64 {
        match self {
            Self::Triangular => 1.0,
            Self::CosinePower(d) => {
                let d = d.get();
                let f = factorial(d);
                ((f * f) << d) as f64 / factorial(2 * d) as f64
            }
        }
    }

    pub fn eval(&self, l: f64) -> f64 {
        if !(0.0..=1.0).contains(&l) {
            return 0.0;
        }
        match self {
            Self::Triangular => {
                if l <= 0.5 {
                    4.0 * l
                } else {
                    4.0 * (1.0 - l)
                }
            }
            Self::CosinePower(d) => {
                // 1 − cos 2πℓ = 2 sin² πℓ, exact near the endpoints
                let s = libm::sin(PI * l);
                self.normalization() * libm::pow(2.0 * s * s, f64::from(d.get()))
            }
        }
    }

    pub fn fourier(&self, k: f64) -> Complex<f64> {
        let phase = Complex::new(libm::cos(k / 2.0), libm::sin(k / 2.0));
        match self {
            Self::Triangular => {
                let s = sinc(k / 4.0);
                phase * (s * s)
            }
            Self::CosinePower(d) => {
                let d = d.get();
                let p = CosineProduct::at(k, d);
                // sin(k/2) / (x − m) with x = k/2π, m the factor split off
                let sin_half_over_eps = match p.split {
                    Some((m, eps)) => sign(m) * PI * sinc(PI * eps),
                    None => libm::sin(k / 2.0),
                };
                let mag = sign(d as i64) * factorial_squared(d) * sin_half_over_eps / (PI * p.rest);
                phase * mag
            }
        }
    }

    pub fn re_fourier(&self, k: f64) -> f64 {
        match self {
            Self::Triangular => {
                let s = sinc(k / 4.0);
                libm::cos(k / 2.0) * s * s
            }
            Self::CosinePower(d) => {
                let d = d.get();
                let p = CosineProduct::at(k, d);
                // sin(k) / (2π (x − m))
                let sin_over_eps = match p.split {
                    Some((_, eps)) => sinc(2.0 * PI * eps),
                    None => libm::sin(k) / (2.0 * PI),
                };
                sign(d as i64) * factorial_squared(d) * sin_over_eps / p.rest
            }
        }
    }

    /// Nonincreasing majorant of `|Re f̂(y)|` for `y >= k`.
    ///
    /// Cosine power: `(d!)² / (2π (k/2π − d)^{2d+1})`, valid for `k > 2πd`.
    /// Triangular: `16 / k²`, valid for `k > 0`.
    pub fn majorant(&self, k: f64) -> Result<f64> {
        match self {
            Self::Triangular => {
                if k > 0.0 {
                    Ok(16.0 / (k * k))
                } else {
                    Err(Error::Domain("triangular majorant needs k > 0"))
                }
            }
            Self::CosinePower(d) => {
                let d = d.get();
                let excess = k / (2.0 * PI) - f64::from(d);
                if excess > 0.0 {
                    Ok(factorial_squared(d) / (2.0 * PI * libm::pow(excess, f64::from(2 * d + 1))))
                } else {
                    Err(Error::Domain("cosine-power majorant needs k > 2πd"))
                }
            }
        }
    }
}

fn sign(n: i64) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `Π_{j=-d}^{d} (x + j)` with `x = k / 2π`, possibly with the near-zero
/// factor `x − m` (|m| <= d) split off as `eps`.
struct CosineProduct {
    split: Option<(i64, f64)>,
    rest: f64,
}

impl CosineProduct {
    fn at(k: f64, d: u32) -> Self {
        let d = i64::from(d);
        let x = k / TWO_PI_HI;
        let m = libm::round(x) as i64;
        if m.abs() <= d {
            let mf = m as f64;
            let delta = libm::fma(-mf, TWO_PI_HI, k) - mf * TWO_PI_LO;
            if libm::fabs(delta) < SINGULAR_WINDOW {
                let eps = delta / TWO_PI_HI;
                let rest = (-d..=d).filter(|&j| j != -m).map(|j| x + j as f64).product();
                return Self { split: Some((m, eps)), rest };
            }
            // away from the window keep the accurate factor inside the product
            let rest = (-d..=d)
                .map(|j| if j == -m { delta / TWO_PI_HI } else { x + j as f64 })
                .product();
            return Self { split: None, rest };
        }
        Self { split: None, rest: (-d..=d).map(|j| x + j as f64).product() }
    }
}
