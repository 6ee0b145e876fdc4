//! Exact polynomial algebra over the rationals.
//!
//! The representation is deliberately small: a polynomial is a map from
//! exponent vectors to nonzero rational coefficients, tied to an explicit
//! ordered list of variable names. Two polynomials interoperate only when
//! they share that context; nothing is aligned implicitly.

mod groebner;
mod hilbert;
mod poly;
mod rat;
mod resultant;
mod sqrt;

pub use groebner::{
    groebner, normal_form, s_polynomial, GroebnerBasis, GroebnerConfig, Ideal, DEFAULT_STEP_BUDGET,
};
pub use hilbert::{
    hilbert_function, hilbert_series, hilbert_series_with, krull_dimension, krull_dimension_with,
    HilbertSeries,
};
pub use poly::{MultiPoly, TermOrder, VarSet};
pub use rat::{int, is_integer, parse_rat, rat, rat_gcd, Rat};
pub use resultant::{
    determinant, discriminant, formal_resultant, jacobian_ideal, proportionality_constant,
    resultant, sylvester_matrix,
};
pub use sqrt::poly_square_root;

/// Errors produced by the polynomial layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QError {
    #[error("variable contexts differ: [{left}] vs [{right}]")]
    ContextMismatch { left: String, right: String },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown variable `{0}` in this context")]
    UnknownVariable(String),

    #[error("resultant needs positive degree in `{0}` for at least one input")]
    DegenerateResultant(String),

    #[error("discriminant supports degrees 2 and 3, got {0}")]
    UnsupportedDegree(u32),

    #[error("step budget of {0} exhausted")]
    BudgetExhausted(u64),

    #[error("generator is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("not a square times a rational constant: {0}")]
    NotASquare(String),

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("division by zero")]
    DivisionByZero,
}
