//! Higgs fields as polynomial matrices: the tensor-product isogeny
//! `SL2 x SL2 -> SO4`, orthogonal structures, characteristic polynomials,
//! Pfaffians and points of the Hitchin base.
//!
//! Characteristic polynomials are always `det(eta*Id - M)`. For a traceless
//! `2x2` field `phi = [[a, b], [c, -a]]` this is `eta^2 - q` with
//! `q = a^2 + bc = -det(phi)`, so the spectral curve is `eta^2 = q`.

mod charpoly;
mod hitchin;
mod isogeny;
mod pfaffian;
mod quadform;

pub use charpoly::{char_poly, CharPoly};
pub use hitchin::{base_isogeny_map, hitchin_point, verify_reduced_ch, Group, HitchinPoint, ReducedChReport};
pub use isogeny::{
    frame_change, frame_quadforms, is_q_skew, q_transpose, so13_reduce, tensor_higgs, traceless, FrameForms,
    So13Reduction,
};
pub use pfaffian::{pfaffian, pfaffian_raw};
pub use quadform::{FormKind, QuadForm};

use thiserror::Error;

use crate::matrix::MatrixError;
use crate::poly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HiggsError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("Higgs field is not traceless (trace {0})")]
    NotTraceless(String),
    #[error("expected a {expected} matrix, found {rows}x{cols}")]
    Shape { expected: String, rows: usize, cols: usize },
    #[error("matrix is not skew with respect to the form")]
    NotQSkew,
    #[error("form has the wrong symmetry: {0}")]
    FormKind(String),
    #[error("degenerate form {0}")]
    Degenerate(String),
    #[error("det(Q) = {0} is not the square of a rational")]
    NotRationalSquare(String),
    #[error("block structure violated: {0}")]
    BlockStructure(String),
    #[error("no scalar c with M^3 = c*M")]
    NoScalar,
    #[error("consistency check failed: {0}")]
    Consistency(String),
    #[error("characteristic polynomials supported up to size 6, got {0}")]
    TooLarge(usize),
}

pub type Result<T> = std::result::Result<T, HiggsError>;
