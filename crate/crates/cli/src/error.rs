use std::path::{Path, PathBuf};

use serde_json::{json, Value};

pub const EXIT_NUMERICAL: u8 = 2;
pub const EXIT_USAGE: u8 = 3;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input.
    Usage { kind: &'static str, message: String },
    Io { path: PathBuf, source: std::io::Error },
    Core(ics_core::Error),
}

impl CliError {
    pub fn usage(kind: &'static str, message: impl Into<String>) -> Self {
        CliError::Usage {
            kind,
            message: message.into(),
        }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_numerical() => EXIT_NUMERICAL,
            _ => EXIT_USAGE,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage { kind, .. } => kind,
            CliError::Io { .. } => "IoError",
            CliError::Core(e) => e.kind(),
        }
    }

    fn details(&self) -> Value {
        use ics_core::Error as E;
        match self {
            CliError::Io { path, .. } => json!({ "path": path.display().to_string() }),
            CliError::Core(E::SingularCovariance {
                smallest,
                largest,
                threshold,
                index,
                rcond,
            }) => json!({
                "rcond": rcond,
                "smallest_eigenvalue": smallest,
                "largest_eigenvalue": largest,
                "threshold": threshold,
                "index": index,
            }),
            CliError::Core(E::RankDeficient(d)) => json!({
                "q": d.q,
                "epsilon": d.epsilon,
                "criterion": d.criterion,
                "r_diag_abs": d.r_diag_abs,
            }),
            CliError::Core(E::NonFiniteInput { row, col }) => json!({ "variable": row, "observation": col }),
            CliError::Core(E::ZeroDistance { indices }) => json!({ "observations": indices }),
            CliError::Core(E::UnreachableCondition { intrinsic, target }) => {
                json!({ "intrinsic_condition": intrinsic, "target_exponent": target })
            }
            _ => json!({}),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "error": {
                "kind": self.kind(),
                "message": self.to_string(),
                "exit_code": self.exit_code(),
                "details": self.details(),
            }
        })
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage { message, .. } => f.write_str(message),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<ics_core::Error> for CliError {
    fn from(e: ics_core::Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;
