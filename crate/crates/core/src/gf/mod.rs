//! Prime-field arithmetic and exact dense linear algebra.

mod field;
mod matrix;
mod space;

pub use field::{ceil_log2, is_prime, Fe, Field, MAX_MODULUS};
pub use matrix::{Echelon, Matrix, SpanBasis};
pub use space::AffineSpace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GfError {
    #[error("modulus {0} is not an odd prime below 2^31")]
    InvalidModulus(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("linear system has no solution")]
    NoSolution,
    #[error("matrix has rank {rank} but {rows} rows; no right inverse exists")]
    RankDeficient { rank: usize, rows: usize },
}
