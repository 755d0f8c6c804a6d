//! Finite algebras over a polynomial base ring, presented by triangular monic
//! relations, together with their morphisms, kernels and involutions.
//!
//! The local models for spectral curves all have this shape: a fiber
//! variable `u` with `u^2 = q(t)` over the base `Q[t]`, fiber products with two
//! such variables, and the nilpotent thickenings that appear when a
//! differential vanishes.

mod blowup;
mod involution;
mod kernel;
mod morphism;
mod ring;
mod series;

pub use blowup::{verify_blowup_local, BlowupCheck, BlowupReport, CheckOutcome};
pub use involution::{diagonal_ideals, DiagonalComponent, InvolutionSplit, RingInvolution};
pub use kernel::{coimage, default_coeff_bound, kernel_conditions, Coimage, KernelReport, KernelStatus};
pub use morphism::{RingMorphism, WellDefinedReport};
pub use ring::{QuotientElem, RelationSet};
pub use series::{reversion, SeriesMap, TruncatedSeries};

use thiserror::Error;

use crate::matrix::MatrixError;
use crate::poly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("relation for `{0}` is not monic of positive degree in that variable")]
    NotMonic(String),
    #[error("not a triangular presentation: {0}")]
    NotTriangular(String),
    #[error("no image given for `{0}`")]
    MissingImage(String),
    #[error("base rings differ: {0}")]
    BaseMismatch(String),
    #[error("elements belong to different rings")]
    RingMismatch,
    #[error("not an involution: {0}")]
    NotInvolution(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, QuotientError>;
