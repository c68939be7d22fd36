//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failures raised by jet arithmetic, special-function evaluation and the
/// identity checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("jet shape mismatch: ({0}, {1}) vs ({2}, {3})")]
    ShapeMismatch(usize, usize, usize, usize),

    #[error("unsupported jet shape: dim {dim}, order {order}")]
    UnsupportedShape { dim: usize, order: usize },

    #[error("division by a jet whose constant term vanishes")]
    ZeroConstantTerm,

    #[error("singular Jacobian at the base point")]
    SingularJacobian,

    #[error("vanishing denominator: {0}")]
    VanishingDenominator(&'static str),

    #[error("pole hit: {0}")]
    Pole(&'static str),

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("series did not converge within {0} terms")]
    SeriesNotConverged(usize),

    #[error("quadrature did not reach tolerance {tol:e} with {nodes} nodes")]
    QuadratureNotConverged { nodes: usize, tol: f64 },

    #[error("singular linear system")]
    SingularSystem,

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
