use thiserror::Error;

use crate::algebra::AlgebraKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A syntax error in an element or polynomial literal.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {message} (expected one of: {})", expected.join(", "))]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
    pub expected: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("algebra mismatch: {0} vs {1}")]
    KindMismatch(AlgebraKind, AlgebraKind),
    #[error("polynomials have different coefficient sides")]
    SideMismatch,
    #[error("expected {expected} coordinates, got {got}")]
    BadLength { expected: usize, got: usize },
    #[error("the zero element has no inverse")]
    ZeroInverse,
    #[error("elements are not similar")]
    NotSimilar,
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial degree {got} is below the required {need}")]
    DegreeTooSmall { need: usize, got: isize },
    #[error("root iteration did not converge after {iterations} iterations")]
    NonConvergence {
        iterations: usize,
        /// Best iterate as (re, im) pairs.
        best: Vec<(f64, f64)>,
    },
    #[error("characteristic division at ({alpha}, {beta}) left a constant remainder with vanishing linear part")]
    InconsistentDivision { alpha: f64, beta: f64 },
    #[error("point is not a root (residual {residual:e})")]
    NotARoot { residual: f64 },
    #[error("base point is already a root")]
    AtRoot,
    #[error("multiplicity {norm} from the norm polynomial contradicts the quotient test")]
    MultiplicityMismatch { norm: usize },
    #[error("descent step found no strict decrease of |f|")]
    StepFailure,
    #[error("base point must be real")]
    NonRealBasePoint,
    #[error("parenthesization tree does not cover the {expected} factors in order")]
    MalformedTree { expected: usize },
    #[error("no regular value found after {0} draws")]
    IrregularValue(usize),
    #[error("preimage sets still intersect after {0} draws")]
    PreimageCollision(usize),
    #[error("expected {expected} simple preimages, found {found}")]
    MissingPreimages { expected: usize, found: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
