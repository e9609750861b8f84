//! Time-harmonic scattering by obstacles carrying a generalized impedance
//! boundary condition `∂_ν u + Z u = 0`, `Z = div_Γ μ ∇_Γ − λ`, in two
//! dimensions, and reconstruction of the obstacle from its far-field matrix
//! with the factorization method.
//!
//! The crate is `no_std` and only needs `alloc`. Everything that touches the
//! file system, the command line or threads lives in the `gibc` companion
//! crate.
//!
//! Module map:
//!
//! * [`special`]: integer-order Bessel and Hankel functions.
//! * [`linalg`]: dense complex matrices, LU, Hermitian Jacobi eigensolver.
//! * [`geometry`]: smooth closed parameterized curves and their sample grids.
//! * [`surface`]: spectral differentiation and the discrete impedance operator.
//! * [`potentials`]: Nyström matrices of the boundary integral operators and
//!   the far-field kernels.
//! * [`forward`]: the exterior impedance problem and the circle series oracle.
//! * [`noise`]: multiplicative uniform noise on far-field data.
//! * [`factorization`]: `F#`, Tikhonov–Morozov indicator, sampling maps.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod factorization;
pub mod forward;
pub mod geometry;
pub mod linalg;
pub mod noise;
pub mod potentials;
pub mod special;
pub mod surface;

mod error;

pub use error::Error;
pub use num_complex::Complex64;

/// Version of this crate, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `i`, written once so kernels read like their formulas.
pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub type Result<T, E = Error> = core::result::Result<T, E>;
