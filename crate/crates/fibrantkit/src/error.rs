use std::path::PathBuf;

use fibrantkit_core::Violation;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unknown {kind} id {id:?} in {context}")]
    UnknownId { kind: &'static str, id: String, context: String },
    #[error("invalid fixture: {}", .0.join("; "))]
    Validation(Vec<String>),
    #[error("closure error: {0}")]
    Closure(String),
    #[error("bad generator parameters: {0}")]
    Parameters(String),
    #[error(transparent)]
    Core(#[from] fibrantkit_core::Error),
}

impl HarnessError {
    pub(crate) fn from_violations(violations: &[Violation]) -> HarnessError {
        for v in violations {
            match v {
                Violation::UnknownObject { context, name } => {
                    return HarnessError::UnknownId { kind: "object", id: name.clone(), context: context.clone() }
                }
                Violation::UnknownMorphism { context, name } => {
                    return HarnessError::UnknownId { kind: "morphism", id: name.clone(), context: context.clone() }
                }
                _ => {}
            }
        }
        HarnessError::Validation(violations.iter().map(ToString::to_string).collect())
    }
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
