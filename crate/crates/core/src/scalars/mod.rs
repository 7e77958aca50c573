//! Exact coefficient arithmetic.

mod cyclo;
pub mod rational;
mod scalar;

pub use cyclo::Cyclo;
pub use rational::Rational;
pub use scalar::{Scalar, SqrtSymbol};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by a non-unit: {0}")]
    DivisionByNonUnit(String),
    #[error("square root of a non-positive rational: {0}")]
    NegativeRadicand(String),
    #[error("square-root branch undetermined for {0}")]
    BranchUndetermined(String),
    #[error("radicand does not fit in 64 bits: {0}")]
    RadicandTooLarge(String),
}
