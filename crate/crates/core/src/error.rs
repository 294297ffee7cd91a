use thiserror::Error;

/// Errors reported by the spline product library.
///
/// Validation failures name the invariant that was violated so that file
/// readers can surface them verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("knot vector is empty")]
    EmptyKnots,

    #[error("knot vector needs at least {required} knots for degree {degree}, got {found}")]
    TooFewKnots {
        degree: usize,
        required: usize,
        found: usize,
    },

    #[error("knots must be finite: knot {index} is {value}")]
    NonFiniteKnot { index: usize, value: f64 },

    #[error("knots must be nondecreasing: knot {index} ({value}) is smaller than its predecessor")]
    DecreasingKnots { index: usize, value: f64 },

    #[error("knot {value} has multiplicity {multiplicity}, exceeding degree+1 = {max}")]
    MultiplicityTooHigh {
        value: f64,
        multiplicity: usize,
        max: usize,
    },

    #[error("knot span is empty: first and last knot are both {0}")]
    EmptySpan(f64),

    #[error("coefficient count must equal dim of the spline space: expected {expected}, got {found}")]
    CoefficientCount { expected: usize, found: usize },

    #[error("coefficients must be finite: coefficient {index} is {value}")]
    NonFiniteCoefficient { index: usize, value: f64 },

    #[error("knot vector is not open with respect to degree {0}")]
    NotOpen(usize),

    #[error("point {x} lies outside the knot span [{lo}, {hi}]")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },

    #[error("unsupported degree {0}")]
    UnsupportedDegree(usize),

    #[error("incompatible domains: [{lo1}, {hi1}] and [{lo2}, {hi2}] differ")]
    IncompatibleDomains { lo1: f64, hi1: f64, lo2: f64, hi2: f64 },

    #[error("index out of range: {what} = {value}, allowed {min}..={max}")]
    IndexOutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },

    #[error("invalid local window: {0}")]
    InvalidWindow(&'static str),

    #[error("target knot vector is not a local refinement: {0}")]
    NotARefinement(&'static str),

    #[error("invalid input: {0}")]
    InvalidInput(&'static str),

    #[error("naive product needs {terms} terms per coefficient, above the limit of {limit}")]
    NaiveInfeasible { terms: f64, limit: u64 },

    #[error("repetition counts overflow 128-bit integers for degree {0}")]
    CombinationOverflow(usize),

    #[error("collocation abscissa {row} violates the nesting condition (zero diagonal entry)")]
    SingularCollocation { row: usize },

    #[error("matrix is singular: zero pivot in column {column}")]
    SingularMatrix { column: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
}
