use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("time {t} outside of domain [{lo}, {hi}]")]
    OutOfDomain { t: f64, lo: f64, hi: f64 },
    #[error("derivative order {requested} exceeds curve order {available}")]
    Order { requested: usize, available: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("invalid curve data: {0}")]
    InvalidCurve(String),
    #[error("image leaves the domain of the map near {point:?}")]
    ImageEscapes { point: Vec<f64> },
    #[error("resource budget exhausted: {0}")]
    Budget(String),
    #[error("missing monotonicity certificate: {0}")]
    MissingCertificate(String),
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("invalid builtin parameters: {0}")]
    BadParams(String),
    #[error("unknown chart {0}")]
    UnknownChart(usize),
    #[error("point {coords:?} is not in the overlap of charts {from} and {to}")]
    NotInOverlap { from: usize, to: usize, coords: Vec<f64> },
    #[error("piece {piece} leaves chart {chart} at time {time}")]
    EscapesChart { piece: usize, chart: usize, time: f64 },
    #[error("chart cover violated at time {time}: {reason}")]
    CoverViolation { time: f64, reason: String },
    #[error("no chart contains the sample at time {time}")]
    CoverFailure { time: f64 },
    #[error("path is not interior to its chart domains (margin {margin})")]
    NotInterior { margin: f64 },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("field is discontinuous at junction time {time} (gap {gap})")]
    Discontinuous { time: f64, gap: f64 },
    #[error("matrix is singular")]
    Singular,
    #[error("deformation undefined at eps = {0}")]
    DeformationUndefined(f64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl Error {
    /// Domain, cover and containment failures (as opposed to malformed input).
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::OutOfDomain { .. }
                | Error::ImageEscapes { .. }
                | Error::NotInOverlap { .. }
                | Error::EscapesChart { .. }
                | Error::CoverViolation { .. }
                | Error::CoverFailure { .. }
                | Error::NotInterior { .. }
                | Error::DeformationUndefined(_)
        )
    }
}
