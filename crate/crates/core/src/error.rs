use thiserror::Error;

/// Errors raised by structure computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands live in different quantales, carriers or shapes.
    #[error("type error: {0}")]
    Type(String),
    /// Malformed input: tables, matrices, maps or subsets that do not fit together.
    #[error("structural error: {0}")]
    Structural(String),
    /// The operation is not available for this quantale or monad.
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    /// A documented precondition of the operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// An enumeration or search budget was exhausted before a verdict was reached.
    #[error("budget exceeded: {0}")]
    Resource(String),
    /// Two independent routes to the same quantity disagreed.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! type_err {
    ($($arg:tt)*) => { $crate::error::Error::Type(format!($($arg)*)) };
}
macro_rules! structural {
    ($($arg:tt)*) => { $crate::error::Error::Structural(format!($($arg)*)) };
}
macro_rules! unsupported {
    ($($arg:tt)*) => { $crate::error::Error::Unsupported(format!($($arg)*)) };
}
macro_rules! precondition {
    ($($arg:tt)*) => { $crate::error::Error::Precondition(format!($($arg)*)) };
}

pub(crate) use {precondition, structural, type_err, unsupported};
