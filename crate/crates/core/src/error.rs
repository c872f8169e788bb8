use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("slant constant a is zero; the frame formulas divide by a")]
    ZeroSlant,

    #[error("tangent vanishes at sample {index} (t = {t})")]
    TangentVanishes { index: usize, t: f64 },

    #[error("curve is geodesic at t = {t} (|k1| = {k1:e})")]
    GeodesicCurve { t: f64, k1: f64 },

    #[error("value became non-finite at t = {t}")]
    NonFinite { t: f64 },

    #[error("slant null direction requires c*a > 0")]
    OrientationDomain,

    #[error("c = ±1/a² gives b = 0, which is excluded")]
    DegenerateB,

    #[error("matrix has zero trace")]
    TraceZero,

    #[error("matrix does not satisfy A² = tr(A)·A (residual {residual:e})")]
    NotProjectiveFamily { residual: f64 },

    #[error("metric is degenerate")]
    DegenerateMetric,

    #[error("matrix is not symmetric (defect {defect:e})")]
    Asymmetric { defect: f64 },

    #[error("metric signature is {positive}+{negative}-, expected 2+1-")]
    WrongSignature { positive: usize, negative: usize },

    #[error("(c1,c2) must be nonzero")]
    ZeroLieParameters,

    #[error("{{C', xi, phi C'}} is not a basis at t = {t} (normalized det {det:e})")]
    DegenerateBasis { t: f64, det: f64 },

    #[error("{0} is not representable in this scalar field")]
    NotRepresentable(&'static str),

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;
