use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid calibration: {0}")]
    InvalidCalibration(String),
    #[error("calibration violates the determinacy condition")]
    Indeterminate,
    #[error("no root of the stable-mode fixed point lies in (0, 1)")]
    NoStableRoot,
    #[error("stacked system is singular")]
    SingularSystem,
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("insufficient data: need {need} rows, have {have}")]
    InsufficientData { need: usize, have: usize },
    #[error("regressor matrix is singular")]
    SingularRegressors,
    #[error("matrix is rank deficient: {0}")]
    RankDeficient(String),
    #[error("GMM weighting matrix is singular")]
    WeightingSingular,
    #[error("stability filter exhausted after {attempts} attempts")]
    StabilityExhausted { attempts: usize },
    #[error("identified set is empty")]
    EmptyIdentifiedSet,
    #[error("all weights are zero")]
    AllZeroWeights,

    #[error("period has no words or labels")]
    EmptyPeriod,
    #[error("base window contains no observations")]
    EmptyBaseWindow,
    #[error("degenerate data: {0}")]
    DegenerateData(String),

    #[error("data-generating process is unstable")]
    UnstableDgp,
    #[error("simulated path diverged")]
    ExplosivePath,

    #[error("parse error at row {row}, column {column}: {message}")]
    Parse { row: usize, column: String, message: String },
    #[error("duplicate date {0}")]
    DuplicateDate(String),
    #[error("non-numeric cell at row {row}, column {column}: {value:?}")]
    NonNumericCell { row: usize, column: String, value: String },
    #[error("column {0} has zero variance")]
    ZeroVariance(String),
    #[error("missing column {0}")]
    MissingColumn(String),
    #[error("missing value in column {0}")]
    MissingValue(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Stable variant name for machine-readable error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidCalibration(..) => "InvalidCalibration",
            Error::Indeterminate => "Indeterminate",
            Error::NoStableRoot => "NoStableRoot",
            Error::SingularSystem => "SingularSystem",
            Error::Unsupported(..) => "Unsupported",
            Error::InvalidArgument(..) => "InvalidArgument",
            Error::InsufficientData { .. } => "InsufficientData",
            Error::SingularRegressors => "SingularRegressors",
            Error::RankDeficient(..) => "RankDeficient",
            Error::WeightingSingular => "WeightingSingular",
            Error::StabilityExhausted { .. } => "StabilityExhausted",
            Error::EmptyIdentifiedSet => "EmptyIdentifiedSet",
            Error::AllZeroWeights => "AllZeroWeights",
            Error::EmptyPeriod => "EmptyPeriod",
            Error::EmptyBaseWindow => "EmptyBaseWindow",
            Error::DegenerateData(..) => "DegenerateData",
            Error::UnstableDgp => "UnstableDgp",
            Error::ExplosivePath => "ExplosivePath",
            Error::Parse { .. } => "Parse",
            Error::DuplicateDate(..) => "DuplicateDate",
            Error::NonNumericCell { .. } => "NonNumericCell",
            Error::ZeroVariance(..) => "ZeroVariance",
            Error::MissingColumn(..) => "MissingColumn",
            Error::MissingValue(..) => "MissingValue",
            Error::DimensionMismatch(..) => "DimensionMismatch",
            Error::Io(..) => "Io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
