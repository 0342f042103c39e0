use thiserror::Error;

/// Errors raised by algebra construction, point evaluation and the DSL.
///
/// Verification *failures* are never errors: they are recorded in the
/// corresponding report. An `Error` means the request itself was malformed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live over different generator sets")]
    GeneratorMismatch,

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("Grassmann ambient mismatch: {left} vs {right} odd generators")]
    AmbientMismatch { left: usize, right: usize },

    #[error("element is not invertible (zero scalar part)")]
    NotInvertible,

    #[error("{0} is not a prime modulus")]
    NotPrime(u64),

    #[error("denominator {den} is not invertible modulo {modulus}")]
    DenominatorNotInvertible { den: String, modulus: u32 },

    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),

    #[error("odd generator `{0}` cannot be invertible")]
    OddInvertible(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("missing image for `{0}`")]
    MissingImage(String),

    #[error("parity violation: image of `{0}` is not homogeneous of the generator's parity")]
    ParityViolation(String),

    #[error("Grassmann relation violated: image of `{0}` does not square to zero")]
    GrassmannRelationViolation(String),

    #[error("invertibility violated: images of `{0}` and its inverse do not multiply to 1")]
    InvertibilityViolation(String),

    #[error("presentation carries no {0}")]
    MissingMap(&'static str),

    #[error("unknown built-in presentation `{0}`")]
    UnknownBuiltin(String),

    #[error("exhaustive enumeration needs a finite base field")]
    InfiniteBase,

    #[error("non-degeneracy needs a finite point set")]
    InfinitePointSet,

    #[error("exhaustive check needs {required} tuple evaluations, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("operation result is not among the enumerated points")]
    NotClosed,

    #[error("scaling map does not respect the binary product: {0}")]
    NotMultiplicative(String),

    #[error("brace negation is not a two-sided multiplicative inverse: {0}")]
    NotGroupLike(String),

    #[error("scalar {0} is not invertible")]
    ScalarNotInvertible(String),

    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }
}
