use thiserror::Error;

/// Errors raised by field arithmetic, matrix algebra and the constructions
/// built on top of them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial {0:#x} is reducible over GF(2)")]
    ReduciblePolynomial(u32),
    #[error("polynomial {modulus:#x} does not have degree {degree}")]
    DegreeMismatch { modulus: u32, degree: u32 },
    #[error("unsupported field size: {0}")]
    UnsupportedSize(String),
    #[error("invalid field notation {0:?}")]
    FieldNotation(String),
    #[error("element code {code} is out of range for a field of order {order}")]
    ElementOutOfRange { code: u32, order: u32 },
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands are defined over different fields ({left} vs {right})")]
    FieldMismatch { left: String, right: String },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("block size must divide dimensions: {0}")]
    BlockSizeMismatch(String),
    #[error("block index ({i}, {j}) out of range for a {block_rows}x{block_cols} block grid")]
    IndexOutOfRange { i: usize, j: usize, block_rows: usize, block_cols: usize },

    #[error("rank {r} is not in 0..={p}")]
    BadRank { p: usize, r: usize },
    #[error("block size {0} is too small, p must be at least 2")]
    BlockTooSmall(usize),
    #[error("input is not a ({t}, {p}) block invertible square matrix")]
    InputNotBlockInvertible { t: usize, p: usize },
    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),
    #[error("{0} is not a prime power")]
    BadOrder(u64),
    #[error("construction invariant violated: {0}")]
    Invariant(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
