//! Spectra of the standard Laplacian on compact metric graphs and recovery of
//! the Euler characteristic `χ = M − N` from finitely many, possibly noisy,
//! eigenfrequencies through a smoothed trace formula.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! * [`graph`]: metric graph model and geometric invariants (`χ`, `ℒ`, `ℓ_min`).
//! * [`spectrum`]: secular-matrix and von Below eigenfrequency solvers, closed forms.
//! * [`testfn`]: triangular and cosine-power test functions with exact transforms.
//! * [`estimator`]: truncated sums, seeded noise, nearest-integer recovery.
//! * [`planner`]: tail bounds and the optimal order / eigenfrequency count.
//! * [`orbits`]: periodic orbit enumeration and trace-formula verification.
#![cfg_attr(not(test), no_std)]
// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod error;
pub mod estimator;
pub mod graph;
pub mod orbits;
pub mod planner;
pub mod spectrum;
mod sum;
pub mod testfn;

pub use error::{Error, Result};
pub use estimator::{admissible_error, perturb_spectrum, recover, recover_chi, truncated_sum, NoiseModel, Recovery};
pub use graph::{GraphSummary, MetricGraph};
pub use orbits::{enumerate_orbits, orbit_side, trace_check, PeriodicOrbit, TraceCheck};
pub use planner::{optimal_plan, RecoveryPlan};
pub use spectrum::{secular_spectrum, von_below_spectrum, AnalyticFamily, Method, Spectrum};
pub use testfn::TestFunction;
