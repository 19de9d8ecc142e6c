use thiserror::Error;
use tripoint_core::census::CensusError;
use tripoint_core::constructions::ConstructionError;
use tripoint_core::geometry::GeometryError;
use tripoint_core::local::LocalError;
use tripoint_core::spectra::SpectraError;

/// Input errors; every one maps to exit status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{file}:{line}:{column}: {message}")]
    Parse { file: String, line: usize, column: usize, message: String },
    #[error("{file}:{line}: {message}")]
    Homogeneity { file: String, line: usize, message: String },
    #[error("cannot read {path}: {error}")]
    Io { path: String, error: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    InvalidInput(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Local(#[from] LocalError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

impl CliError {
    /// Machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse-error",
            CliError::Homogeneity { .. } => "homogeneity-error",
            CliError::Io { .. } => "io-error",
            CliError::Usage(_) => "usage-error",
            CliError::InvalidInput(_) => "invalid-input",
            CliError::Construction(_) => "construction-error",
            CliError::Census(_) => "census-error",
            CliError::Geometry(_) => "geometry-error",
            CliError::Local(_) => "classification-error",
            CliError::Spectra(_) => "spectra-error",
        }
    }
}
