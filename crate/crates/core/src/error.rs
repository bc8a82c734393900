use std::fmt;

use serde::{Deserialize, Serialize};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("ring mismatch: Z[sqrt {left}] vs Z[sqrt {right}]")]
    RingMismatch { left: u32, right: u32 },

    #[error("group variant mismatch: {0}")]
    VariantMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("not unimodular: s = {s} < 1")]
    NotUnimodular { s: f64 },

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("element is not in the lattice: {0}")]
    NotInLattice(String),

    #[error("insufficient core: need radius {needed}, have {available}")]
    InsufficientCore { needed: f64, available: f64 },

    #[error("empty core: {0}")]
    EmptyCore(String),

    #[error("budget exceeded: {what} (limit {limit})")]
    Budget { what: String, limit: usize },

    #[error("no cover found within search radius {radius}")]
    CoverNotFound { radius: f64 },

    #[error("AG3 verification failed: {0}")]
    Ag3Failed(Box<Ag3Failure>),

    #[error("unreachable point {point} (word search exhausted at length {max_len})")]
    Unreachable { point: String, max_len: usize },

    #[error("subset precondition violated: {0}")]
    NotSubset(String),

    #[error("{path}:{line}:{column}: {msg}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        msg: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Why an AG3 verification did not go through.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ag3FailureKind {
    /// The offending product sits close enough to the enumeration boundary
    /// that a larger enumeration could repair it.
    BoundaryProximity,
    /// The offending product is deep inside the data or was constructed
    /// globally; no finite witness of the tried radius exists.
    Structural,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Ag3Failure {
    pub kind: Ag3FailureKind,
    /// Exact coordinates of the two factors `x`, `y` whose product escapes `F·Λ`.
    pub pair: (String, String),
    pub product: String,
    /// Largest norm of the candidate witness set that was tried.
    pub witness_radius: f64,
    pub detail: String,
}

impl fmt::Display for Ag3Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?}: {} * {} = {} not in F*L (|F| radius {}): {}",
            self.kind, self.pair.0, self.pair.1, self.product, self.witness_radius, self.detail
        )
    }
}
