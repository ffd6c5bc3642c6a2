use thiserror::Error;

use crate::tables::{Elem, Violation};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("table shape mismatch: {0}")]
    SizeMismatch(String),

    #[error("{} axiom violation(s), first: {}", .0.len(), .0.first().map(ToString::to_string).unwrap_or_default())]
    AxiomViolations(Vec<Violation>),

    #[error("semimodule base mismatch: {0}")]
    BaseMismatch(String),

    #[error("carrier of size {size} exceeds the configured bound {bound}")]
    CarrierTooLarge { size: usize, bound: usize },

    #[error("predicate is only defined for proper ideals and subsemimodules")]
    NotProper,

    /// `I ⊕̃ N` fails to absorb: `scalar · vector ∉ N` with `scalar ∈ I`.
    #[error("not an ideal: {scalar}·{vector} lies outside the subsemimodule")]
    NotAnIdeal { scalar: Elem, vector: Elem },

    #[error("subset is not closed under the {0} operations")]
    NotClosed(&'static str),

    #[error("zero-divisors of a module are undefined for the zero module")]
    EmptyModule,

    #[error("unknown builtin `{0}`")]
    UnknownName(String),

    #[error("enumeration order {order} is outside the supported range {min}..={max}")]
    OrderTooLarge { order: usize, min: usize, max: usize },

    #[error("weight dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("graph contains a cycle through node `{0}`")]
    CycleDetected(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("total path mass {0} is too small to normalize")]
    ZeroMass(f64),

    #[error("graph has more than {limit} source-to-sink paths")]
    TooManyPaths { limit: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
