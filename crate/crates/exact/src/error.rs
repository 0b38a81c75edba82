use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("conductor {from} does not divide {to}")]
    NotAMultiple { from: u32, to: u32 },
    #[error("value does not lie in the subfield of conductor {0}")]
    NotInSubfield(u32),
    #[error("polynomial degree {degree} exceeds the factorization bound {bound}")]
    UnsupportedDegree { degree: usize, bound: usize },
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("zero divisor")]
    DivisionByZero,
}

pub type Result<T> = std::result::Result<T, ExactError>;
