//! File formats, configuration and the command-line pipeline around
//! [`gibc_core`].
//!
//! The `gibc` binary chains three stages, each also usable on its own:
//!
//! 1. `simulate`: solve the forward problem and write the far-field matrix
//!    (GIBCFF v1, see [`farfield_file`]).
//! 2. `contaminate`: apply multiplicative uniform noise with a fixed seed.
//! 3. `invert`: factorization-method indicator on a sampling grid, written as
//!    CSV and PGM (see [`output`]).
//!
//! `pipeline` runs all three and writes a [`manifest::Manifest`].

pub mod commands;
pub mod config;
pub mod error;
pub mod farfield_file;
pub mod manifest;
pub mod output;

pub use config::RunConfig;
pub use error::CliError;
