use thiserror::Error;

/// Every failure the library can report. Variants map onto CLI exit codes
/// through [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ValueGroupError: {0} is not in the value group")]
    ValueGroup(String),
    #[error("NotInValuationRing: element has negative valuation {0}")]
    NotInValuationRing(String),
    #[error("ZeroElement: operation undefined on zero")]
    ZeroElement,
    #[error("ZeroDivision: division by zero")]
    ZeroDivision,
    #[error("ZeroPolynomial: operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("NotPolynomial: negative exponent in {0}")]
    NotPolynomial(String),
    #[error("ArityError: expected {expected} coordinates, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("RetryExhausted: no generic perturbation found after {0} attempts")]
    RetryExhausted(usize),
    #[error("InconsistentInitial: {0}")]
    InconsistentInitial(String),
    #[error("DegreeBoundTooSmall: {0}")]
    DegreeBoundTooSmall(String),
    #[error("CombinatorialCapExceeded: degree {degree} needs {count} minors (cap {cap}); use traversal mode")]
    CombinatorialCapExceeded { degree: usize, count: u128, cap: u128 },
    #[error("NonConvergence: traversal exceeded {0} cells")]
    NonConvergence(usize),
    #[error("DirectionNotInLineality: direction is not in the lineality space of every cell")]
    DirectionNotInLineality,
    #[error("MonomialInput: the tropical hypersurface of a monomial is empty")]
    MonomialInput,
    #[error("IdealIsUnit: every initial ideal contains a monomial")]
    IdealIsUnit,
    #[error("NotInIdeal: {0}")]
    NotInIdeal(String),
    #[error("NotRenderable: ambient dimension {0} after projection, need 2")]
    NotRenderable(usize),
    #[error("ParseError: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// 2 for user/input errors, 3 for internal inconsistencies, 4 for resource caps.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InconsistentInitial(_) | Error::Internal(_) => 3,
            Error::CombinatorialCapExceeded { .. } | Error::NonConvergence(_) => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
