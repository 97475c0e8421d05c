//! Exact dense linear algebra over word-sized prime fields.

mod field;
mod matrix;

pub use field::{is_prime, PrimeField, DEFAULT_PRIME};
pub use matrix::FpMatrix;

/// Rank of a matrix.
pub fn rank(m: &FpMatrix) -> usize {
    m.rank()
}

/// Reduced row-echelon form (zero rows dropped) and pivot columns.
pub fn rref(m: &FpMatrix) -> (FpMatrix, Vec<usize>) {
    m.rref()
}

/// Columns span the right kernel.
pub fn nullspace_basis(m: &FpMatrix) -> FpMatrix {
    m.nullspace_basis()
}

pub fn random_matrix(field: PrimeField, rows: usize, cols: usize, seed: u64) -> FpMatrix {
    FpMatrix::random(field, rows, cols, seed)
}
