//! File formats, experiments and the command-line front end for
//! [`qgchi_core`].
//!
//! * [`io`]: graph JSON and spectrum CSV.
//! * [`presets`]: the lasso, `K5`, `K5`-pendant and `K3,3` graphs.
//! * [`plot`]: SVG line plots.
//! * [`experiment`]: parameter sweeps writing CSV/SVG pairs.
//! * [`commands`]: argument parsing and subcommands.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod error;
pub mod experiment;
pub mod io;
pub mod plot;
pub mod presets;

pub use error::{CliError, Result};
