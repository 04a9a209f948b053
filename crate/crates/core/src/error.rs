use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not an odd prime below 2^31")]
    InvalidModulus(u64),
    #[error("cannot build the extension field GF({p}^{degree})")]
    InvalidExtension { p: u64, degree: u32 },
    #[error("operands live in different variable contexts")]
    ContextMismatch,
    #[error("variable context has no lambda block")]
    NoLambdaBlock,
    #[error("quotient by the zero ideal")]
    ZeroIdealQuotient,
    #[error("ideal power exponent must be at least 1")]
    ZeroPower,
    #[error("ideal is not zero-dimensional: {0}")]
    NotZeroDimensional(String),
    #[error("minor size {t} out of range for a 4x{cols} matrix")]
    MinorSize { t: usize, cols: usize },
    #[error("forms must be homogeneous of one degree: {0}")]
    DegreeMismatch(String),
    #[error("all four forms are zero")]
    AllZero,
    #[error("standing hypotheses fail: {0}")]
    Hypotheses(String),
    #[error("randomized search failed: {0}")]
    Randomness(String),
    #[error("operation needs a prime ground field")]
    FieldMismatch,
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
