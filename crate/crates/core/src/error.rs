use thiserror::Error;

/// Errors raised by the exact classifiers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial has no discriminant")]
    ConstantPolynomial,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("malformed rational {0:?}: expected an integer or p/q (no decimals)")]
    MalformedRational(String),
    #[error("wrong number of values: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("matrix is not traceless (trace = {0})")]
    NotTraceless(String),
    #[error("matrix is zero")]
    ZeroMatrix,
    #[error("base conic singular")]
    BaseConicSingular,
    #[error("second conic singular")]
    SecondConicSingular,
    #[error("conic matrix is not symmetric")]
    NotSymmetric,
    #[error(
        "no rational parametrization: no rational point found on the base conic; \
         change coordinates so the conic passes through a rational point (e.g. x^2+yz)"
    )]
    NoRationalParametrization,
    #[error("conics are equal; intersection multiplicities undefined")]
    EqualConics,
    #[error("pair not in classification")]
    PairNotClassified,
    #[error("point (0,0) is not a point of projective space")]
    NullPoint,
    #[error("expression has total degree {0}, expected 4")]
    WrongDegree(String),
    #[error("degenerate intersection product (zero or empty)")]
    DegenerateProduct,
    #[error("expression parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("G2 structure self-check failed: {0}")]
    StructureCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
