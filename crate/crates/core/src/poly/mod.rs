//! Exact rational scalars and sparse multivariate polynomials.
//!
//! A [`Poly`] always lives in a [`Vars`] context: an ordered list of variable
//! names that fixes both the exponent-vector layout and the lexicographic
//! monomial order. Operations between polynomials require identical contexts;
//! use [`Poly::embed`] to move a polynomial into a wider one.

mod parse;
mod polynomial;
mod rational;
mod univariate;
mod vars;

pub use parse::{parse_poly, parse_poly_in};
pub use polynomial::{Monomial, Poly};
pub use rational::{rational_sqrt, Rational};
pub use univariate::{gcd_univariate, UniPoly};
pub use vars::Vars;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable `{name}` at line {line}, column {column}")]
    UnknownVariable { name: String, line: usize, column: usize },
    #[error("zero denominator at line {line}, column {column}")]
    ZeroDenominator { line: usize, column: usize },
    #[error("mismatched variable contexts: [{left}] vs [{right}]")]
    ContextMismatch { left: String, right: String },
    #[error("variable `{0}` is not in the context")]
    MissingVariable(String),
    #[error("duplicate variable `{0}` in context")]
    DuplicateVariable(String),
    #[error("expected a univariate polynomial, found variables [{0}]")]
    NotUnivariate(String),
}

pub type Result<T> = std::result::Result<T, PolyError>;
