use thiserror::Error;

use crate::development::Development;
use crate::monomial::GenId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("even root of a negative value")]
    NegativeEvenRoot,
    #[error("polynomial has even degree {0}; an odd degree is required")]
    EvenDegree(usize),
    #[error("series is zero")]
    ZeroSeries,
    #[error("series is not purely infinite")]
    NotPurelyInfinite,
    #[error("generator {0} has no stored logarithm (ladder too shallow)")]
    LogIncomplete(GenId),
    #[error("order undetermined above the truncation cutoff")]
    Undetermined,
    #[error("expansion does not reach the cutoff within {0} steps")]
    CutoffUnreachable(usize),
    #[error("sign of the infinitesimal tail is hidden by the cutoff")]
    UndeterminedTail,
    #[error("element is not positive")]
    NonPositive,
    #[error("cutoff reached after {} development steps", .0.steps.len())]
    CutoffExhausted(Box<Development>),
    #[error("element `{0}` is already present in the triple")]
    AlreadyPresent(String),
    #[error("value gap {0} is not a single monomial term")]
    NonMonomialGap(String),
    #[error("exponent has a nonzero infinitesimal part")]
    InfinitesimalExponent,
    #[error("exponent has an irrational constant part")]
    IrrationalConstantExponent,
    #[error("not of the form 2^q * monomial")]
    NotLogRepresentable,
    #[error("ladder too shallow: need depth {needed}, have {have}")]
    LadderTooShallow { needed: usize, have: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed JSON: {0}")]
    Json(String),
}
