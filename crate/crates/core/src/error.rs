use alloc::string::String;

/// Errors raised by the graph model, spectral solvers, planner and estimator.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("graph must have at least one vertex and one edge")]
    EmptyGraph,
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("edge refers to unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("edge {edge} has non-positive or non-finite length {length}")]
    InvalidLength { edge: usize, length: f64 },
    #[error("graph is not connected")]
    Disconnected,
    #[error("no edge with index {0}")]
    UnknownEdge(usize),
    #[error("position {position} is not strictly inside an edge of length {length}")]
    InvalidPosition { position: f64, length: f64 },
    #[error("graph is not equilateral")]
    NotEquilateral,
    #[error("edge lengths have no common divisor with denominator <= {0}")]
    Incommensurable(u32),
    #[error("k_max must be positive, got {0}")]
    InvalidKMax(f64),
    #[error("spectrum is not sorted or contains negative values")]
    InvalidSpectrum,
    #[error("need {needed} eigenfrequencies, only {available} available")]
    InsufficientSpectrum { needed: usize, available: usize },
    #[error("eigenvalue count check failed: {0}")]
    CountCheck(String),
    #[error("invalid parameter: {0}")]
    Domain(&'static str),
    #[error("test function order {0} outside supported range 1..=12")]
    UnsupportedOrder(u32),
    #[error("orbit enumeration exceeded {0} orbits")]
    TooManyOrbits(usize),
    #[error("spectrum noise {delta} exceeds the plan's admissible {delta_max}")]
    NoiseExceedsPlan { delta: f64, delta_max: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;
