//! Exact scalars and dense linear algebra over the rationals or `F_p`.

mod matrix;
mod reduce;
mod scalar;

use thiserror::Error;

pub use matrix::Mat;
pub use reduce::Rref;
pub use scalar::{Field, Scalar, MAX_PRIME};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse scalar {0:?}")]
    BadScalar(String),
}

/// Exact product of two matrices.
pub fn mat_mul(a: &Mat, b: &Mat) -> Result<Mat, LinAlgError> {
    a.matmul(b)
}

pub fn kernel_basis(a: &Mat) -> Vec<Vec<Scalar>> {
    a.kernel_basis()
}

pub fn rank(a: &Mat) -> usize {
    a.rank()
}

pub fn solve(a: &Mat, b: &Mat) -> Result<Option<Mat>, LinAlgError> {
    a.solve(b)
}

/// Rank of a family of vectors of equal length.
pub fn span_rank(field: Field, len: usize, vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() || len == 0 {
        return 0;
    }
    Mat::from_vec_rows(field, len, vectors).rank()
}

/// Extracts a maximal independent subfamily, keeping the first occurrences.
pub fn independent_subset(field: Field, len: usize, vectors: &[Vec<Scalar>]) -> Vec<usize> {
    if vectors.is_empty() || len == 0 {
        return Vec::new();
    }
    // Column pivots of the matrix whose columns are the vectors.
    Mat::from_columns(field, len, vectors).rref().pivots
}

impl Mat {
    pub(crate) fn from_vec_rows(field: Field, len: usize, vectors: &[Vec<Scalar>]) -> Mat {
        let data = vectors.iter().flat_map(|v| v.iter().cloned()).collect();
        Mat::new(field, vectors.len(), len, data).expect("vectors of equal length")
    }
}
