//! Exact arithmetic in the field `Q(q)` of rational functions and the q-numbers built on it.

mod laurent;
mod poly;
pub(crate) mod qcomb;
mod ratfunc;

pub use laurent::Laurent;
pub use poly::Poly;
pub use qcomb::{q_binomial, q_factorial, q_int};
pub use ratfunc::{QScalarReport, RatFunc, Valuation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QqError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational function: {0:?}")]
    Parse(String),
}
