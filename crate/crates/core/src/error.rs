use thiserror::Error;

/// Errors raised by the library layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} must be odd")]
    EvenModulus(u64),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("operation needs a nonconstant polynomial")]
    ConstantPolynomial,
    #[error("polynomial moduli differ ({0} vs {1})")]
    ModulusMismatch(u64, u64),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix dimension {0} exceeds the supported limit")]
    DimensionTooLarge(usize),
    #[error("invalid field spec: {0}")]
    InvalidSpec(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group closure exceeded {0} elements")]
    ClosureOverflow(usize),
    #[error("subgroup must be proper")]
    NotProperSubgroup,
    #[error("{0} is not a fundamental discriminant")]
    NotFundamentalDiscriminant(i64),
    #[error("discriminant {0} exceeds the enumeration bound")]
    DiscriminantTooLarge(i64),
    #[error("discriminants differ ({0} vs {1})")]
    DiscriminantMismatch(i64, i64),
    #[error("form must be positive definite")]
    NotPositiveDefinite,
    #[error("{0} is a perfect square")]
    PerfectSquare(u64),
    #[error("repeated prime {0}")]
    RepeatedPrime(u64),
    #[error("galois group of degree {0} must be supplied explicitly")]
    UnsupportedDegree(usize),
    #[error("field spec carries no group data")]
    MissingGroup,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("polynomial is reducible over Q: {0}")]
    Reducible(String),
    #[error("basis matrix is singular")]
    SingularBasis,
    #[error("basis is not closed under multiplication: {0}")]
    NonIntegralBasis(String),
    #[error("value does not fit the native integer width")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;
