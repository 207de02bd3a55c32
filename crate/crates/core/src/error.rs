use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("set not resolved at this resolution")]
    Unresolved,

    #[error("exhaustion index too small for domain")]
    ExhaustionTooCoarse,

    #[error("A is empty")]
    EmptyA,

    #[error("solver did not converge after {iterations} sweeps (last change {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("exhaustion inconsistency: iterate {k} rose by {excess:e} above iterate {prev}")]
    ExhaustionInconsistency { k: usize, prev: usize, excess: f64 },

    #[error("point {0} is not in the domain minus the set")]
    OutsideDomain(String),

    #[error("walk-on-spheres censored {censored} of {total} walks")]
    TooManyCensored { censored: usize, total: usize },

    #[error("empty mask")]
    EmptyMask,

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("root iteration failed (residuals {residuals:?})")]
    RootFinding { residuals: Vec<f64> },

    #[error("sampling failed: {0}")]
    Sampling(String),

    #[error("sampling insufficient for degrees (condition {condition:e})")]
    RankDeficient { condition: f64 },

    #[error("quadrature did not converge: doubling nodes changed the value by {change:e}")]
    Quadrature { change: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable code used in CLI error records.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidGeometry(_) => "geometry.invalid",
            Error::Unresolved => "geometry.unresolved",
            Error::ExhaustionTooCoarse => "geometry.exhaustion",
            Error::EmptyA => "extremal.empty_a",
            Error::NoConvergence { .. } => "extremal.no_convergence",
            Error::ExhaustionInconsistency { .. } => "extremal.exhaustion_inconsistency",
            Error::OutsideDomain(_) => "extremal.outside_domain",
            Error::TooManyCensored { .. } => "extremal.censored",
            Error::EmptyMask => "cross.empty_mask",
            Error::InvalidPolynomial(_) => "singularity.invalid_polynomial",
            Error::RootFinding { .. } => "singularity.root_finding",
            Error::Sampling(_) => "extension.sampling",
            Error::RankDeficient { .. } => "extension.rank_deficient",
            Error::Quadrature { .. } => "extension.quadrature",
            Error::InvalidArgument(_) => "input.invalid",
            Error::Config(_) => "config.schema",
            Error::Io(_) => "io",
            Error::Json(_) => "config.parse",
        }
    }
}
