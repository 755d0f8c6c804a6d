//! Spectral curves over a curve `Sigma` of genus `g >= 2`, known through
//! divisor data and local chart models at the zeros of the differentials.

mod curve;
mod fiber;
mod module;
mod specfile;

pub use curve::{
    chart_vars, classify_spectral_curve, double_cover_genus, spectral_arithmetic_genus, Component, CurveClassification,
    CurveContext, CurveKind, Differential, PointType, QuadDiff, SingularPoint, SpecData, SpectralCurveSpec, CHART_VAR,
};
pub use fiber::{
    composite_char_poly, fiber_product, fourfold_genus, jacobian_smooth, plus_chart, plus_image, product_chart_ring,
    FiberChart, FiberProduct, PlusChart, PlusImage, PlusRegime, SplitRibbonCertificate,
};
pub use module::{box_product, diagonal_restriction, direct_image_higgs, DirectImage, LocalModule};
pub use specfile::{parse_curve_spec, CurveSpecFile};

use thiserror::Error;

use crate::higgs::HiggsError;
use crate::matrix::MatrixError;
use crate::poly::PolyError;
use crate::quotient::QuotientError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("genus must be at least 2, got {0}")]
    Genus(u32),
    #[error("bad divisor: {0}")]
    Divisor(String),
    #[error("zero `{0}` is not simple and has no chart model")]
    MissingChart(String),
    #[error("base rings differ: {0}")]
    BaseMismatch(String),
    #[error("bad module: {0}")]
    Module(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Higgs(#[from] HiggsError),
}

pub type Result<T> = std::result::Result<T, SpectralError>;
