use std::path::PathBuf;

use thiserror::Error;

use crate::config::ConfigError;
use crate::farfield_file::FarFieldFileError;

/// Process exit codes.
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error(transparent)]
    FarFieldFile(#[from] FarFieldFileError),
    #[error(transparent)]
    Core(#[from] gibc_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot start worker threads: {0}")]
    Threads(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Argument(_) => EXIT_CONFIG,
            _ => EXIT_RUNTIME,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }
}

macro_rules! core_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Core(e.into())
            }
        }
    )*};
}

core_error!(
    gibc_core::forward::ForwardError,
    gibc_core::factorization::FactorizationError,
    gibc_core::noise::NoiseError,
    gibc_core::geometry::GeometryError
);
