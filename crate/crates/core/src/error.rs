use thiserror::Error;

use crate::gf2::MAX_DIM;

/// Errors raised by the algebraic core.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension {0} exceeds the supported maximum of {MAX_DIM}")]
    DimensionTooLarge(usize),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("bit pattern {bits:#x} has bits outside dimension {n}")]
    BitsOutOfRange { n: usize, bits: u32 },

    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("expected {expected} matrices, got {got}")]
    BasisLength { expected: usize, got: usize },

    #[error("subspace dimension {m} out of range 1..={n}")]
    SubspaceDimension { m: usize, n: usize },

    #[error("polynomial {0} has degree outside 1..={MAX_DIM}")]
    PolynomialDegree(String),

    #[error("cannot parse polynomial {0:?}")]
    PolynomialSyntax(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
