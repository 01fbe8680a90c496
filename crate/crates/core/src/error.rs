use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series has zero constant term and is not a unit")]
    NotAUnit,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("operator is not invertible: leading coefficient is not a unit")]
    NotInvertible,
    #[error("operator is not normalized (leading coefficient 1, sub-leading 0)")]
    NotNormalized,
    #[error("operator has order zero")]
    ZeroOrder,
    #[error("operator is not of the form D + lower order terms")]
    NotLaxForm,
    #[error("operator is not differential")]
    NotDifferential,
    #[error("denominator is not monic")]
    DenominatorNotMonic,
    #[error("no Ore solution within the precision window")]
    NoSolutionAtPrecision,
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("dressing underdetermined at this depth: {0}")]
    UnderdeterminedAtDepth(String),
    #[error("series is not certified in the spectral field")]
    FNotCertified,
    #[error("operators do not commute on the trusted window")]
    NotCommutingAtWindow,
    #[error("no relation found within budget; span dimensions by n: {growth:?}")]
    NoRelationWithinBudget { growth: Vec<(usize, usize)> },
    #[error("plane is not in the big cell: {0}")]
    NotBigCell(String),
    #[error("point does not lie on the curve")]
    PointNotOnCurve,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotAUnit => "not_a_unit",
            Error::PrecisionExhausted(_) => "precision_exhausted",
            Error::NotInvertible => "not_invertible",
            Error::NotNormalized => "not_normalized",
            Error::ZeroOrder => "zero_order",
            Error::NotLaxForm => "not_lax_form",
            Error::NotDifferential => "not_differential",
            Error::DenominatorNotMonic => "denominator_not_monic",
            Error::NoSolutionAtPrecision => "no_solution_at_precision",
            Error::WindowTooSmall(_) => "window_too_small",
            Error::UnderdeterminedAtDepth(_) => "underdetermined_at_depth",
            Error::FNotCertified => "f_not_certified",
            Error::NotCommutingAtWindow => "not_commuting_at_window",
            Error::NoRelationWithinBudget { .. } => "no_relation_within_budget",
            Error::NotBigCell(_) => "not_big_cell",
            Error::PointNotOnCurve => "point_not_on_curve",
            Error::Parse(_) => "parse_error",
        }
    }

    /// Errors that signal an exhausted truncation rather than a definite answer.
    pub fn is_precision_limited(&self) -> bool {
        matches!(
            self,
            Error::PrecisionExhausted(_)
                | Error::NoSolutionAtPrecision
                | Error::WindowTooSmall(_)
                | Error::UnderdeterminedAtDepth(_)
                | Error::NoRelationWithinBudget { .. }
        )
    }
}
