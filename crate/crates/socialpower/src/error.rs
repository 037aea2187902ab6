use thiserror::Error;

use crate::network::ValidationReport;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Input matrix is not square or has fewer than three nodes.
    #[error("matrix must be square with n >= 3, got {rows} rows and {cols} columns")]
    Dimension { rows: usize, cols: usize },

    /// A matrix entry is NaN or infinite.
    #[error("matrix entry at row {row}, column {col} is not finite")]
    NumericInput { row: usize, col: usize },

    /// The matrix fails one or more interaction-matrix invariants.
    #[error("not a valid interaction matrix: {0}")]
    Invalid(ValidationReport),

    /// An iterative solver hit its iteration cap.
    #[error("no convergence within {iterations} iterations (final residual {residual:.3e})")]
    Convergence { residual: f64, iterations: usize },

    /// A self-weight vector violates the simplex constraints.
    #[error("invalid self-weight vector: {0}")]
    Weights(String),

    /// An eigenvector value violates positivity or normalisation.
    #[error("invalid eigenvector: {0}")]
    Eigenvector(String),

    /// Issue iteration was started from a simplex vertex.
    #[error("initial self-weights must not be a simplex vertex")]
    VertexStart,

    /// A variation spec violates its structural constraints.
    #[error("invalid variation spec: {0}")]
    Spec(String),

    /// A sweep grid point produces an invalid spec.
    #[error("grid point {value} is invalid: {reason}")]
    GridPoint { value: f64, reason: String },

    /// A matrix or vector file could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
