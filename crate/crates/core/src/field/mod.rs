//! Exact arithmetic in `F_q` and in `K = F_q((t))`.

mod fq;
mod laurent;
pub mod text;

use thiserror::Error;

pub use fq::{is_irreducible, FqElement, FqEmbedding, FqField, FqOp};
pub use laurent::{wp_inverse_positive, LaurentPoly, LaurentRing, Valuation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid modulus: {0}")]
    BadModulus(String),
    #[error("modulus {0:?} is reducible")]
    Reducible(Vec<u32>),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("operation needs a nonzero operand")]
    ZeroOperand,
    #[error("exponent {0} is not divisible by p")]
    NotAPthPower(i64),
    #[error("a precision bound is required")]
    PrecisionRequired,
    #[error("expected positive valuation, got {0}")]
    NonPositiveValuation(String),
    #[error("the small modulus has no root in the target field")]
    NoRootFound,
    #[error("cannot parse field element {input:?}: {reason}")]
    Parse { input: String, reason: String },
}
