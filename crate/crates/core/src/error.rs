use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification used by front ends to pick an exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or out-of-domain input.
    Input,
    /// A configured size guard or enumeration cap refused the computation.
    Guard,
    /// An algebraic identity or cross-route check failed.
    Identity,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus {modulus} is reducible over F_{p}")]
    ReducibleModulus { p: u32, modulus: String },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("invalid field specification {spec:?}: {reason}")]
    BadFieldSpec { spec: String, reason: String },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("cyclotomic order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("cyclotomic element is not a rational integer (tail coefficients differ)")]
    NotInteger,
    #[error("matrix must be square and non-empty: {0}")]
    BadMatrix(String),
    #[error("{what} = {value} outside {range}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        range: String,
    },
    #[error("guard `{guard}` refused the computation: {value} exceeds limit {limit}")]
    Guard {
        guard: &'static str,
        value: u128,
        limit: u128,
    },
    #[error("identity `{name}` failed: {detail}")]
    Identity { name: &'static str, detail: String },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Guard { .. } => ErrorKind::Guard,
            Error::Identity { .. } | Error::NotInteger => ErrorKind::Identity,
            _ => ErrorKind::Input,
        }
    }

    pub(crate) fn identity(name: &'static str, detail: impl Into<String>) -> Self {
        Error::Identity {
            name,
            detail: detail.into(),
        }
    }
}
