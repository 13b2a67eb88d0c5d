use thiserror::Error;

use crate::decimal::DecimalError;
use crate::model::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("duplicate object name {0:?} in universe")]
    DuplicateObject(String),
    #[error("unknown object {0:?}")]
    UnknownObject(String),
    #[error("vector has length {found}, universe has {expected} objects")]
    LengthMismatch { expected: usize, found: usize },
    #[error("operands are defined over different universes")]
    UniverseMismatch,
    #[error("covering {name:?} is not a fuzzy gamma-covering: {report}")]
    InvalidCovering {
        name: String,
        report: ValidationReport,
    },
    #[error("duplicate member name {member:?} in covering {covering:?}")]
    DuplicateMember { covering: String, member: String },
    #[error("expert reports for {covering:?} disagree on value names: {detail}")]
    ReportNameMismatch { covering: String, detail: String },
    #[error("covering {0:?} has no expert reports")]
    NoReports(String),
    #[error("a multi-granulation system needs at least one covering")]
    NoCoverings,
    #[error("covering {0:?} is not crisp (degrees must be 0 or 1 and gamma 1)")]
    NotCrisp(String),
    #[error("threshold pair requires 0 <= beta <= alpha <= 1, got alpha={alpha}, beta={beta}")]
    ThresholdOrder { alpha: String, beta: String },
    #[error("parameter vector has length {found}, system has {expected} coverings")]
    VectorLength { expected: usize, found: usize },
    #[error(transparent)]
    Decimal(#[from] DecimalError),
}

pub type Result<T, E = ModelError> = std::result::Result<T, E>;
