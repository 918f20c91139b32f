//! Exact arithmetic: prime fields, Laurent polynomials in one or two
//! variables, fraction-free determinants, nullspaces and elementary divisors.

mod field;
mod laurent;
mod linalg;
mod minors;
pub(crate) mod upoly;

pub use field::{format_scalar, CoeffField, Scalar};
pub use laurent::LaurentPoly;
pub use linalg::{int_det, span_eq, FieldMatrix, IntMatrix};
pub use minors::{det_laurent, elementary_divisor, first_nonzero_divisor, LaurentMatrix};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("bad field spec {0:?}; expected q, z or gf:P")]
    BadFieldSpec(String),
    #[error("operands live in different rings ({0} vs {1})")]
    DomainMismatch(String, String),
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("index {k} out of range for size {n}")]
    IndexOutOfRange { k: usize, n: usize },
    #[error("division is not exact")]
    InexactDivision,
    #[error("polynomial syntax error at byte {pos}: {msg}")]
    PolySyntax { pos: usize, msg: String },
}
