use thiserror::Error;

/// Every failure mode surfaced by the library.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("point is zero; the punctured plane excludes the origin")]
    ZeroPoint,

    #[error("pole of the Gamma function at {at}")]
    Pole { at: String },

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("series evaluation requested at |z| = {radius:.3}, beyond the trusted radius {limit:.3}")]
    SeriesDivergence { radius: f64, limit: f64 },

    #[error("asymptotic tail does not reach tolerance: {0}")]
    DivergentTail(String),

    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),

    #[error("argument outside the admissible sector: {0}")]
    OutOfSector(String),

    #[error("point lies on a cut: {0}")]
    OnCut(String),

    #[error("point is not in sector {expected}")]
    SectorMismatch { expected: String },

    #[error("degenerate pivot at index {index} of the Hankel factorization")]
    DegeneratePivot { index: usize },

    #[error("finite-difference stencil failed at beta offset {offset}: {source}")]
    StencilFailure { offset: String, source: Box<Error> },

    #[error("beta = 0 is excluded by the hypothesis of the formula")]
    BetaZero,

    #[error("precision validation failed for {quantity}: relative difference {rel_diff:e} exceeds {tol:e}")]
    PrecisionValidation { quantity: String, rel_diff: f64, tol: f64 },

    #[error("invalid precision context: {0}")]
    InvalidPrecision(String),
}

pub type Result<T> = std::result::Result<T, Error>;
