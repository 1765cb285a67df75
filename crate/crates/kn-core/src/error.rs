//! Error type shared by all modules.
//!
//! Every operation that consumes a truncated series must fail loudly when a
//! coefficient outside the trusted window is requested. Returning an
//! untrusted 0 would let an exact-equality check pass vacuously, so
//! `InsufficientPrecision` is an error, never a default value.

use thiserror::Error;

use crate::series::Point;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A coefficient outside the trusted window was requested. `deficit` is
    /// how many extra exponents of precision the caller would have needed.
    #[error("insufficient precision: exponent {needed} requested but trusted window ends at {available} (deficit {deficit})")]
    InsufficientPrecision {
        needed: i64,
        available: i64,
        deficit: i64,
    },

    #[error("empty trusted window: {0}")]
    EmptyWindow(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("chart mismatch: operands expand at {0} and {1}")]
    ChartMismatch(Point, Point),

    #[error("weight mismatch: expected a weight-{expected} form, got weight {got}")]
    WeightMismatch { expected: i64, got: i64 },

    #[error("index 2n={twice_n} has wrong parity for genus {genus}")]
    IndexParity { twice_n: i64, genus: i64 },

    #[error("index window too narrow: {0}")]
    WindowTooNarrow(String),

    #[error("singular linear system: precision too low to determine element {0}")]
    SingularSystem(String),

    #[error("model schema violation: {0}")]
    ModelSchema(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn insufficient(needed: i64, available: i64) -> Self {
        Error::InsufficientPrecision {
            needed,
            available,
            deficit: needed - available + 1,
        }
    }

    /// Exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InsufficientPrecision { .. }
            | Error::EmptyWindow(_)
            | Error::WindowTooNarrow(_) => 3,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
