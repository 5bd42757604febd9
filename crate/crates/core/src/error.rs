use thiserror::Error;

use crate::qarith::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A q-integer `[n]_{q^m}` that must be inverted is zero at the chosen `q`.
    #[error("vanishing factor [{n}]_{{q^{base_exp}}} at q = {q}")]
    VanishingFactor { base_exp: u32, n: u32, q: Rational },

    /// The q-difference calculus divides by `1 - q^m`.
    #[error("q-difference operator undefined for base q^{base_exp} = 1 (q = {q})")]
    DegenerateBase { base_exp: u32, q: Rational },

    #[error("q-binomial [{n}; {k}] requested with k > n")]
    BinomialRange { n: u32, k: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("no binding for variable `{0}`")]
    MissingBinding(String),

    #[error("coefficient index {index} beyond truncation order {order}")]
    OrderExceeded { index: usize, order: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0}")]
    Parse(String),
}

impl Error {
    /// Arithmetic failures map to CLI exit code 3, everything else the caller decides.
    pub fn is_arithmetic(&self) -> bool {
        matches!(
            self,
            Error::VanishingFactor { .. }
                | Error::DegenerateBase { .. }
                | Error::DivisionByZero
                | Error::BinomialRange { .. }
        )
    }
}
