use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("index {index} outside {lo}..={hi}")]
    Range { index: i64, lo: i64, hi: i64 },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("region ({n}, {n_prime}) is not an essential region of type {kind} at k = {k}")]
    RegionMismatch {
        n: u64,
        n_prime: u64,
        kind: String,
        k: f64,
    },

    /// An edge-crossing pattern that none of the five region types describes.
    #[error("cell ({n}, {n_prime}) at k = {k}: unclassifiable crossing {entry} -> {exit}")]
    UnknownRegionShape {
        n: u64,
        n_prime: u64,
        k: f64,
        entry: &'static str,
        exit: &'static str,
    },

    #[error("coding is not strictly increasing on the required indices: {0}")]
    NotStrict(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("construction failure at k0 = {k0}: relative junction gap {gap:e}")]
    Construction { k0: u64, gap: f64 },

    #[error("quadrature did not converge on [{a}, {b}]: error estimate {estimate:e}")]
    Quadrature { a: f64, b: f64, estimate: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Errors that signal a disagreement with an oracle or a violated theorem,
    /// as opposed to bad input.
    pub fn is_violation(&self) -> bool {
        matches!(
            self,
            Error::TheoremViolation(_)
                | Error::Construction { .. }
                | Error::UnknownRegionShape { .. }
                | Error::Internal(_)
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Range { .. } => "range",
            Error::Argument(_) => "argument",
            Error::RegionMismatch { .. } => "region_mismatch",
            Error::UnknownRegionShape { .. } => "unknown_region_shape",
            Error::NotStrict(_) => "not_strict",
            Error::TheoremViolation(_) => "theorem_violation",
            Error::Construction { .. } => "construction_failure",
            Error::Quadrature { .. } => "quadrature",
            Error::Parse(_) => "parse",
            Error::Internal(_) => "internal",
            Error::Json(_) => "json",
            Error::Io(_) => "io",
        }
    }
}

pub(crate) fn range_err(index: impl TryInto<i64>, lo: i64, hi: i64) -> Error {
    Error::Range {
        index: index.try_into().unwrap_or(i64::MAX),
        lo,
        hi,
    }
}
