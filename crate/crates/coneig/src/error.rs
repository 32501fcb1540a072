//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the library.
///
/// Numerical failures (`NoConvergence`, `Singular`, `PairingFailure`,
/// `NotCondiagonalizable`, …) are distinct from input errors
/// (`ShapeMismatch`, `Parse`, `StructureViolation`, …) so that callers — in
/// particular the CLI — can map them to different exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Inversion of a quaternion whose modulus underflows.
    #[error("division by a quaternion of vanishing modulus")]
    ZeroDivision,

    /// A vector argument that must be nonzero was entirely zero.
    #[error("vector argument is zero")]
    ZeroVector,

    /// Two operands have incompatible shapes.
    #[error("shape mismatch in {op}: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    ShapeMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    /// An operation defined only for square matrices received a rectangular one.
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    /// Rows of unequal length were supplied when building a matrix.
    #[error("rows of unequal length building a matrix")]
    RaggedRows,

    /// A linear solve or inversion met a pivot below its floor.
    #[error("matrix is singular to working precision")]
    Singular,

    /// An iterative eigenvalue or eigenvector computation did not converge.
    #[error("iteration failed to converge")]
    NoConvergence,

    /// `hermitian_eigs` received a matrix that is not Hermitian.
    #[error("matrix is not Hermitian to working precision")]
    NotHermitian,

    /// The complex-adjoint spectrum could not be split into conjugate pairs.
    #[error("complex-adjoint spectrum could not be split into conjugate pairs")]
    PairingFailure,

    /// A value passed as a coneigenvalue is not one, to working precision.
    #[error("{0} is not a basal right coneigenvalue of the matrix")]
    NotAConeigenvalue(String),

    /// No condiagonalization with acceptable conditioning and residual exists
    /// (or the supplied candidate fails to condiagonalize).
    #[error("matrix could not be condiagonalized: {0}")]
    NotCondiagonalizable(String),

    /// A structural hypothesis (normal, conjugate normal, …) failed.
    #[error("matrix {matrix} is not {predicate} to working precision")]
    StructureViolation {
        matrix: &'static str,
        predicate: &'static str,
    },

    /// Two spectra that must have equal cardinality did not.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// Conditioning rejection in a generator ran out of attempts.
    #[error("no sample met the conditioning bound after {attempts} attempts")]
    ResampleLimit { attempts: usize },

    /// A quaternion literal or matrix file failed to parse.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
