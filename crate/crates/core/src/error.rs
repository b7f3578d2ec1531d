use thiserror::Error;

/// Errors raised by constructors, parsers and checkers in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set must have at least 2 elements, got {0}")]
    DegenerateGroundSet(usize),

    #[error("ground set of size {0} exceeds the supported maximum of {max}", max = crate::foundation::MAX_N)]
    GroundSetTooLarge(usize),

    #[error("ground set mismatch: {0} vs {1}")]
    GroundMismatch(usize, usize),

    #[error("invalid {kind} literal {input:?}: {reason}")]
    Parse {
        kind: &'static str,
        input: String,
        reason: String,
    },

    #[error("invalid {kind}: {reason}")]
    Invalid { kind: &'static str, reason: String },

    #[error("transformation {0} is a bijection and has no place in Sing(X)")]
    NotSingular(String),

    #[error("{sub} is not contained in {sup}")]
    NotSubset { sub: String, sup: String },

    #[error("{lower} is not below {upper} in the partition order")]
    OrderViolation { lower: String, upper: String },

    #[error("morphisms are not composable: codomain {left} differs from domain {right}")]
    NotComposable { left: String, right: String },

    #[error("{element} is not a member of {set}")]
    NotMember { element: String, set: String },

    #[error("{what} is limited to n <= {max}, got n = {n}")]
    SizeGuard { what: &'static str, n: usize, max: usize },

    #[error("{what} would visit {count} morphisms, over the budget of {budget}")]
    BudgetExceeded {
        what: &'static str,
        count: usize,
        budget: usize,
    },

    #[error("ideal is not total: {0} is not a cross-section of any member")]
    NotTotal(String),

    #[error("closure violation: {0}")]
    ClosureViolation(String),

    #[error("malformed Cayley table: {0}")]
    MalformedTable(String),

    #[error("map is not total: element {0} has no image in the target table")]
    NonTotalMap(String),

    #[error("malformed functor candidate: {0}")]
    MalformedCandidate(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn parse_error(kind: &'static str, input: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        kind,
        input: input.to_string(),
        reason: reason.into(),
    }
}
