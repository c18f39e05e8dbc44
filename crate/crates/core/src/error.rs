use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("invalid field parameters: {0}")]
    InvalidParameters(String),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("modulus degree mismatch: expected monic of degree {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("parameter overflow: {0}")]
    Overflow(String),
    #[error("elements belong to different field contexts")]
    MixedContexts,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not in the subfield of degree {0}")]
    NotInSubfield(usize),
    #[error("degree {to} does not divide degree {from} (or does not divide the ambient degree)")]
    NonDivisibleDegrees { from: usize, to: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("vectors are linearly dependent")]
    DependentBasis,
    #[error("enumeration of {size} elements exceeds the cap of {cap}")]
    CapExceeded { size: u128, cap: u128 },
    #[error("pairing is not sesquilinear: {0}")]
    NotSesquilinear(String),
    #[error("form is not λ-Hermitian")]
    NotHermitian,
    #[error("unclassified: {0}")]
    Unclassified(String),
    #[error("polynomial degree mismatch: {0}")]
    PolyDegree(String),
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
