use thiserror::Error;

/// Broad failure classes, used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input or misuse of an operation.
    Usage,
    /// An algebraic axiom (d² = 0, Leibniz, linearity, ...) does not hold.
    Axiom,
    /// A hypothesis of a model construction is violated.
    Hypothesis,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dependent subspace basis")]
    DependentBasis,

    #[error("not a cocycle")]
    NotACocycle,

    #[error("not a dgmodule morphism: {0}")]
    NotAMorphism(String),

    #[error("not a CDGA: {0}")]
    NotACdga(String),

    #[error("not a dgmodule: {0}")]
    NotAModule(String),

    #[error("not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("balanced condition fails for {map}: f({x})·{y} differs from {x}·f({y})")]
    Unbalanced { map: String, x: String, y: String },

    #[error("degree window violated: N = {n} exceeds 2p-3 = {bound}")]
    DegreeWindow { n: i32, bound: i32 },

    #[error("connectivity bound false: {0}")]
    Connectivity(String),

    #[error("truncation ideal need not be stable: {0}")]
    NotConnected(String),

    #[error("degenerate pairing in degree {0}")]
    DegeneratePairing(i32),

    #[error("Poincaré duality fails: {0}")]
    NotPoincareDuality(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("mismatched operands: {0}")]
    Mismatch(String),

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse { .. } | Error::Invalid(_) | Error::Mismatch(_) => ErrorKind::Usage,
            Error::Unbalanced { .. }
            | Error::DegreeWindow { .. }
            | Error::Connectivity(_)
            | Error::NotConnected(_)
            | Error::Hypothesis(_) => ErrorKind::Hypothesis,
            _ => ErrorKind::Axiom,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
