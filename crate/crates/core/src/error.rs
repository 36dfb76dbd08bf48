use thiserror::Error;

/// Errors raised by the library. Each variant names the violated condition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: Q(zeta_{left}) and Q(zeta_{right})")]
    FieldMismatch { left: u64, right: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("Q(zeta_{from}) is not a subfield of Q(zeta_{to})")]
    NotASubfield { from: u64, to: u64 },
    #[error("invalid q-matrix: {reason} at ({i}, {j})")]
    InvalidQMatrix { reason: String, i: usize, j: usize },
    #[error("operands use different q-matrices")]
    QMatrixMismatch,
    #[error("divisor is not central")]
    NotCentral,
    #[error("not divisible, remainder {remainder}")]
    NotDivisible { remainder: String },
    #[error("bad indices: {0}")]
    BadIndices(String),
    #[error("group closure exceeded cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("degree window is empty: {0}")]
    DegreeWindowEmpty(String),
    #[error("commutator map is not equivariant")]
    NotEquivariant,
    #[error("not a Yetter-Drinfeld module: {0}")]
    NotYetterDrinfeld(String),
    #[error("problem too large: {size} exceeds limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("element not in group: {0}")]
    NotInGroup(String),
    #[error("parameter function is not conjugation invariant")]
    NotConjugationInvariant,
    #[error("support element does not normalize Gamma_q: {0}")]
    NotNormalized(String),
    #[error("configuration error at {location}: {message}")]
    Config { location: String, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
