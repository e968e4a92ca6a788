use thiserror::Error;

/// Failure of a CLI command; each variant maps to a stable exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}: {message}")]
    Parse { path: String, line: usize, message: String },
    #[error("{0}")]
    Input(String),
    #[error("{0} (pass --normalize to rescale columns)")]
    Normalization(String),
    #[error("{0}")]
    Rank(String),
    #[error("{0}")]
    Construction(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 0 ok, 2 input, 3 normalization, 4 rank, 5 construction.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Input(_) | CliError::Io { .. } => 2,
            CliError::Normalization(_) => 3,
            CliError::Rank(_) => 4,
            CliError::Construction(_) => 5,
        }
    }

    pub(crate) fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io { context: context.into(), source }
    }
}

impl From<incoherence_core::Error> for CliError {
    fn from(e: incoherence_core::Error) -> Self {
        use incoherence_core::Error as E;
        match e {
            E::NotUnitNorm { .. } | E::ZeroColumn { .. } => CliError::Normalization(e.to_string()),
            E::RankDeficient { .. } | E::DegenerateSupport { .. } => CliError::Rank(e.to_string()),
            E::Construction { .. } | E::NoConvergence { .. } => CliError::Construction(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}
