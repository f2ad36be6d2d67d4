use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid arithmetic domain: {0}")]
    InvalidDomain(String),

    #[error("chart has {monomials} monomials, above the guard of {limit}")]
    GuardExceeded { monomials: usize, limit: usize },

    #[error("point lies outside the affine chart: {0}")]
    OutsideChart(String),

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("no general sample after {attempts} attempts")]
    DegenerateSample { attempts: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("direct route defect {direct} differs from Segre route defect {segre}")]
    RouteMismatch { direct: usize, segre: usize },
}

impl Error {
    /// Size-guard violations.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Inconsistent(_) | Error::RouteMismatch { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
