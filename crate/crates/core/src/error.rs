use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different rings ({left} vs {right} variables)")]
    MismatchedVariables { left: usize, right: usize },
    #[error("expected {expected} substitution images, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("division by the zero polynomial")]
    ZeroDenominator,
    #[error("operation is undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("element is zero")]
    ZeroValue,
    #[error("element is not a unit (constant residue is zero)")]
    NotAUnit,
    #[error("unit inversion needs more than {budget} reciprocal terms")]
    TermBudgetExceeded { budget: usize },
    #[error("index {index} is out of range for {len} terms")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
    #[error("invalid exponent pair (p, q) = ({p}, {q}): {reason}")]
    InvalidPair { p: u32, q: u32, reason: String },
    #[error("weighted substitution valuation needs exactly 2 active variables, got {0}")]
    UnsupportedArity(usize),
    #[error("invalid valuation: {0}")]
    InvalidValuation(String),
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
