use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-finite potential evaluation near t={t}, x={x:?}")]
    EvaluationDomain { t: f64, x: [f64; 3] },

    #[error("contour must be closed")]
    OpenContour,

    #[error("quadrature did not reach tolerance (residual estimate {residual:e})")]
    ToleranceNotMet { residual: f64 },

    #[error("surface parametrization is degenerate over cell ({cell_u}, {cell_v})")]
    SurfaceDegenerate { cell_u: usize, cell_v: usize },

    #[error("surface boundary does not match contour (Hausdorff distance {distance:e})")]
    BoundaryMismatch { distance: f64 },

    #[error("contour family does not contract to a point (final length {length:e})")]
    BadFamily { length: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("experiment invalid: {0}")]
    ExperimentInvalid(String),

    #[error("absorber too weak: probability {leak:e} reached the grid edge")]
    AbsorberTooWeak { leak: f64 },

    #[error("no detectable fringes (contrast {contrast:.4})")]
    NoFringes { contrast: f64 },

    #[error("fringe period is ambiguous (peak ratio {ratio:.3})")]
    AmbiguousPeriod { ratio: f64 },

    #[error("flux scan too coarse: {0}")]
    ScanTooCoarse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable snake_case name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid_argument",
            Error::EvaluationDomain { .. } => "evaluation_domain",
            Error::OpenContour => "open_contour",
            Error::ToleranceNotMet { .. } => "tolerance_not_met",
            Error::SurfaceDegenerate { .. } => "surface_degenerate",
            Error::BoundaryMismatch { .. } => "boundary_mismatch",
            Error::BadFamily { .. } => "bad_family",
            Error::Config(_) => "config",
            Error::NumericalFailure(_) => "numerical_failure",
            Error::ExperimentInvalid(_) => "experiment_invalid",
            Error::AbsorberTooWeak { .. } => "absorber_too_weak",
            Error::NoFringes { .. } => "no_fringes",
            Error::AmbiguousPeriod { .. } => "ambiguous_period",
            Error::ScanTooCoarse(_) => "scan_too_coarse",
            Error::Io(_) => "io",
        }
    }

    /// Process exit code used by the `abh` command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::InvalidArgument(_) | Error::Io(_) => 2,
            Error::EvaluationDomain { .. }
            | Error::OpenContour
            | Error::ToleranceNotMet { .. }
            | Error::SurfaceDegenerate { .. }
            | Error::BoundaryMismatch { .. }
            | Error::BadFamily { .. }
            | Error::NumericalFailure(_) => 3,
            Error::ExperimentInvalid(_) | Error::AbsorberTooWeak { .. } => 4,
            Error::NoFringes { .. } | Error::AmbiguousPeriod { .. } | Error::ScanTooCoarse(_) => 5,
        }
    }
}
