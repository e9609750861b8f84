use thiserror::Error;

use crate::factorization::FactorizationError;
use crate::forward::ForwardError;
use crate::geometry::GeometryError;
use crate::linalg::LinalgError;
use crate::noise::NoiseError;
use crate::potentials::PotentialError;
use crate::special::SpecialFunctionError;
use crate::surface::SurfaceError;

/// Any error raised by this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Special(#[from] SpecialFunctionError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    Forward(#[from] ForwardError),
    #[error(transparent)]
    Noise(#[from] NoiseError),
    #[error(transparent)]
    Factorization(#[from] FactorizationError),
}
