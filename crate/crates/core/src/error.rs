use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Kernel evaluation at (numerically) coincident points.
    #[error("singular kernel evaluation: points coincide (distance {0:e})")]
    Singular(f64),

    /// A discretization or placement constraint is violated.
    #[error("geometry error: {0}")]
    Geometry(String),

    /// Invalid input to a linear-algebra routine.
    #[error("linear algebra error: {0}")]
    Linalg(String),

    /// A precondition on an argument failed.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
