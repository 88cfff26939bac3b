use thiserror::Error;

/// Every failure mode surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("axis {axis} out of range for {dim} variables")]
    AxisOutOfRange { axis: usize, dim: usize },
    #[error("radical {0} is not a square-free integer >= 2")]
    BadRadical(u32),
    #[error("series leading term is not the identity")]
    NonUnitLeadingTerm,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("bad arity {i} for {n} inputs")]
    BadArity { i: usize, n: usize },
    #[error("arity {0} is not supported")]
    ArityUnsupported(usize),
    #[error("degree error: {0}")]
    DegreeError(String),
    #[error("coderivation is not pronilpotent on the given word")]
    NotPronilpotent,
    #[error("super polynomials live on different charts")]
    ChartMismatch,
    #[error("{{Theta, Theta}} does not vanish")]
    ThetaNotMC,
    #[error("expected bi-degree {expected:?}, found {found:?}")]
    BadBiDegree { expected: (u32, u32), found: (u32, u32) },
    #[error("multivector is not good: double contraction with conormal pair ({0}, {1}) is nonzero")]
    NotGood(usize, usize),
    #[error("deformation has a nonzero order-zero term")]
    NonSmallDeformation,
    #[error("matrix is singular at the sample point")]
    SingularAtSample,
    #[error("subbundles are not complementary: {0}")]
    NotComplementary(String),
    #[error("invalid splitting: {0}")]
    InvalidSplitting(String),
    #[error("bivector is not Poisson or not regular: {0}")]
    NotRegularPoisson(String),
    #[error("t-degree {found} exceeds bound {bound}")]
    DegreeBoundExceeded { found: usize, bound: usize },
    #[error("slope is only known through approximants")]
    InexactSlope,
    #[error("cutoff {0} is too large for box enumeration")]
    CutoffTooLarge(String),
    #[error("value is not real")]
    NotReal,
    #[error("syntax error at {line}:{col}: expected one of {expected:?}")]
    Syntax { line: usize, col: usize, expected: Vec<String> },
    #[error("type error at {line}:{col}: {msg}")]
    Type { line: usize, col: usize, msg: String },
    #[error("semantic error at line {line}: {msg}")]
    Semantic { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
