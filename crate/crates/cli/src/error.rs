//! CLI error type mapping every failure onto a documented exit code and a
//! one-line machine-readable JSON report on stderr.

use std::fmt;

use wshift_core::Error as CoreError;

/// Exit codes: 1 engine failure, 2 malformed input data, 3 invalid
/// configuration, 4 missing required parameter, 5 I/O failure.
#[derive(Debug)]
pub enum CliError {
    /// A clustering engine failed mid-run.
    Engine(CoreError),
    /// Input data could not be parsed or failed validation.
    Parse(String),
    /// Flags or config values are out of range or inconsistent.
    InvalidConfig(String),
    /// An algorithm-specific flag is required but absent.
    MissingParameter(&'static str),
    /// Filesystem failure.
    Io(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Engine(_) => 1,
            CliError::Parse(_) => 2,
            CliError::InvalidConfig(_) => 3,
            CliError::MissingParameter(_) => 4,
            CliError::Io(_) => 5,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Engine(_) => "engine",
            CliError::Parse(_) => "parse",
            CliError::InvalidConfig(_) => "invalid-config",
            CliError::MissingParameter(_) => "missing-parameter",
            CliError::Io(_) => "io",
        }
    }

    /// The one-line JSON report printed to stderr.
    pub fn to_json(&self) -> String {
        serde_json::json!({
            "error": self.kind(),
            "message": self.to_string(),
        })
        .to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Engine(e) => write!(f, "{e}"),
            CliError::Parse(m) => write!(f, "{m}"),
            CliError::InvalidConfig(m) => write!(f, "{m}"),
            CliError::MissingParameter(name) => {
                write!(f, "missing required parameter {name}")
            }
            CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            // Data-shaped failures: the input rows themselves are bad.
            CoreError::EmptyInput
            | CoreError::NegativeMass { .. }
            | CoreError::NotNormalized { .. }
            | CoreError::ZeroTotal
            | CoreError::NonMonotone { .. }
            | CoreError::DimensionMismatch { .. }
            | CoreError::InvalidHistogram { .. }
            | CoreError::EmptySet
            | CoreError::LengthMismatch { .. }
            | CoreError::TooFewPoints { .. }
            | CoreError::EmptySeries
            | CoreError::EmptyRange => CliError::Parse(e.to_string()),
            // Configuration-shaped failures: the data is fine, the knobs
            // are not.
            CoreError::InvalidConfig { .. }
            | CoreError::DistanceMismatch { .. }
            | CoreError::KTooLarge { .. } => CliError::InvalidConfig(e.to_string()),
            // Genuine run failures.
            CoreError::EmptyActiveSet
            | CoreError::DegenerateInit { .. }
            | CoreError::NoSuccessfulSeeds => CliError::Engine(e),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        // The csv crate wraps underlying I/O errors; keep those on the I/O
        // exit code and treat everything else as malformed input.
        if e.is_io_error() {
            CliError::Io(e.to_string())
        } else {
            CliError::Parse(e.to_string())
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
