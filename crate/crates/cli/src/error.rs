use std::path::PathBuf;

use argshift::{
    CriterionError, LieError, PencilError, PoissonError, PolyError, ShiftError, SingularError,
};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", .path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed algebra JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("invalid --{flag}: {message}")]
    Flag { flag: &'static str, message: String },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
    #[error(transparent)]
    Singular(#[from] SingularError),
    #[error(transparent)]
    Shift(#[from] ShiftError),
    #[error(transparent)]
    Pencil(#[from] PencilError),
    #[error(transparent)]
    Criterion(#[from] CriterionError),
}

impl CliError {
    pub fn flag(flag: &'static str, message: impl Into<String>) -> Self {
        CliError::Flag { flag, message: message.into() }
    }

    /// Machine-readable form written to stdout.
    pub fn to_json(&self) -> Value {
        let mut body = json!({ "kind": self.kind(), "message": self.to_string() });
        match self {
            CliError::Json { line, column, .. } => {
                body["location"] = json!({ "line": line, "column": column });
            }
            CliError::Lie(LieError::JacobiViolation { i, j, l, k, value }) => {
                body["witness"] = json!({
                    "i": i, "j": j, "l": l, "k": k,
                    "value": argshift::ratpoly::format_rational(value),
                });
            }
            _ => {}
        }
        json!({ "schema": 1, "error": body })
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Json { .. } => "malformed_json",
            CliError::Flag { .. } => "invalid_flag",
            CliError::Lie(LieError::JacobiViolation { .. }) => "jacobi_violation",
            CliError::Lie(LieError::InvariantViolation { .. } | LieError::InvariantDimension { .. }) => {
                "invalid_invariant"
            }
            CliError::Lie(LieError::UnknownCatalog { .. }) => "unknown_catalog",
            CliError::Lie(_) => "invalid_algebra",
            CliError::Poly(_) => "invalid_polynomial",
            CliError::Poisson(_) => "poisson",
            CliError::Singular(_) => "singular",
            CliError::Shift(_) => "shift",
            CliError::Pencil(_) => "pencil",
            CliError::Criterion(_) => "criterion",
        }
    }
}
