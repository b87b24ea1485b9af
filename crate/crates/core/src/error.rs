use thiserror::Error;

/// Errors raised by the dynamics, statistics and geometry routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A coordinate pair does not lie in the (scaled) Farey triangle.
    #[error("point ({a}, {b}) lies outside the section of width {width}")]
    OutsideSection { a: String, b: String, width: String },

    /// A floating-point orbit left the section by more than the drift tolerance.
    #[error("float drift at step {step}: image ({a:e}, {b:e}) violates membership by {excess:e}")]
    Drift {
        step: u64,
        a: f64,
        b: f64,
        excess: f64,
    },

    /// No Farey fraction of the requested level falls in the interval.
    #[error("interval [{lo}, {hi}] contains no Farey fraction of level {level}")]
    EmptyInterval { level: u64, lo: f64, hi: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The operation needs exact rational input.
    #[error("{0} requires exact rational arithmetic")]
    ExactRequired(&'static str),

    /// The lattice has a vertical vector short enough to make its horocycle orbit miss the section.
    #[error("lattice has a vertical vector of length {length} <= 1/t")]
    VerticallyShort { length: String },

    #[error("orbit did not close within {cap} steps")]
    IterationCap { cap: u64 },

    /// Moment integral evaluated outside its convergence domain.
    #[error("moment integral diverges at (s, t) = ({s}, {t})")]
    Pole { s: String, t: String },

    #[error("lattice enumeration would visit {requested} coefficient rows (limit {limit})")]
    SearchRadius { requested: u128, limit: u128 },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
