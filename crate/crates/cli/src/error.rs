use std::io;

use bei_core::bms::BmsError;
use bei_core::corona::CoronaError;
use bei_core::cutsets::CutsetError;
use bei_core::graph::format::FormatError;
use bei_core::invariants::InvariantError;
use bei_core::GraphError;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Bound(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Input(_) => "input",
            CliError::Bound(_) => "bound",
            CliError::Validation(_) => "validation",
            CliError::Io(_) => "io",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) => 3,
            CliError::Bound(_) => 4,
            CliError::Validation(_) => 5,
            CliError::Io(_) => 6,
        }
    }

    /// `{"error": {"kind": ..., "message": ...}}` on one line.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Body<'a> {
            kind: &'a str,
            message: String,
        }
        #[derive(Serialize)]
        struct Wrapper<'a> {
            error: Body<'a>,
        }
        serde_json::to_string(&Wrapper {
            error: Body {
                kind: self.kind(),
                message: self.to_string(),
            },
        })
        .expect("error serializes")
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::SizeBound { .. } => CliError::Bound(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<CutsetError> for CliError {
    fn from(e: CutsetError) -> Self {
        match e {
            CutsetError::SizeBound { .. } => CliError::Bound(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<CoronaError> for CliError {
    fn from(e: CoronaError) -> Self {
        match e {
            CoronaError::Format(_) | CoronaError::Json(_) => CliError::Input(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::Cutsets(c) => c.into(),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<BmsError> for CliError {
    fn from(e: BmsError) -> Self {
        match e {
            BmsError::Cutsets(c) => c.into(),
            _ => CliError::Validation(e.to_string()),
        }
    }
}
