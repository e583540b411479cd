use crate::rational::Rat;
use thiserror::Error;

/// Library-wide error type. `exit_class` groups variants into the two
/// failure categories the CLI distinguishes: malformed input versus a
/// violated theorem precondition.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("vector at index {0} is zero")]
    ZeroVector(usize),
    #[error("vector at index {0} is not primitive (gcd of entries > 1)")]
    NonPrimitive(usize),
    #[error("list does not span its ambient space (rank {rank} < dim {dim})")]
    NonSpanning { rank: usize, dim: usize },
    #[error("list is not totally unimodular: submatrix rows {rows:?} cols {cols:?} has determinant {det}")]
    NotTotallyUnimodular {
        rows: Vec<usize>,
        cols: Vec<usize>,
        det: String,
    },
    #[error("vector at index {0} is a coloop")]
    ColoopPivot(usize),
    #[error("value prescribed at {point:?}, which is not an interior lattice point of the zonotope")]
    SupportViolation { point: Vec<i64> },
    #[error("polynomial is not a member of the expected space")]
    MembershipFailure,
    #[error("projection is not surjective onto the quotient space")]
    SurjectivityFailure,
    #[error("deletion-contraction point map failed to be a bijection")]
    BijectionFailure,
    #[error("one-sided limits disagree at a wall: {} vs {}",
            crate::rational::format_rat(plus), crate::rational::format_rat(minus))]
    Discontinuity { plus: Rat, minus: Rat },
    #[error("collocation matrix is singular")]
    SingularSystem,
    #[error("convolution identity failed at {point:?}: {} vs {}",
            crate::rational::format_rat(lhs), crate::rational::format_rat(rhs))]
    ConvolutionMismatch {
        point: Vec<String>,
        lhs: Rat,
        rhs: Rat,
    },
    #[error("sample point lies on a wall of the spline complex")]
    WallSample,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Exit classes used by the CLI: 1 for malformed input, 2 for violated
/// theorem preconditions discovered on well-formed input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitClass {
    BadInput,
    Precondition,
}

impl Error {
    pub fn exit_class(&self) -> ExitClass {
        match self {
            Error::DimensionMismatch(_)
            | Error::NonSquare { .. }
            | Error::IndexOutOfRange { .. }
            | Error::InvalidInput(_) => ExitClass::BadInput,
            _ => ExitClass::Precondition,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "dimension-mismatch",
            Error::NonSquare { .. } => "non-square",
            Error::IndexOutOfRange { .. } => "index-out-of-range",
            Error::ZeroVector(_) => "zero-vector",
            Error::NonPrimitive(_) => "non-primitive",
            Error::NonSpanning { .. } => "non-spanning",
            Error::NotTotallyUnimodular { .. } => "not-totally-unimodular",
            Error::ColoopPivot(_) => "coloop-pivot",
            Error::SupportViolation { .. } => "support-violation",
            Error::MembershipFailure => "membership-failure",
            Error::SurjectivityFailure => "surjectivity-failure",
            Error::BijectionFailure => "bijection-failure",
            Error::Discontinuity { .. } => "discontinuity",
            Error::SingularSystem => "singular-system",
            Error::ConvolutionMismatch { .. } => "convolution-mismatch",
            Error::WallSample => "wall-sample",
            Error::Invariant(_) => "invariant-failure",
            Error::InvalidInput(_) => "invalid-input",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
