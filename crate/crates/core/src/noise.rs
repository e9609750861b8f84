//! Multiplicative noise `u (1 + η (X₁ + i X₂))` with `X₁, X₂` i.i.d.
//! uniform on `[−1, 1]`.
//!
//! Draws come from ChaCha20 keyed by the seed, one stream per matrix entry
//! (`stream = i·2³² + j`), so every entry's noise is independent of
//! evaluation order and of the matrix size.

use num_complex::Complex64;
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

use crate::forward::FarFieldMatrix;
use crate::linalg::ComplexMatrix;

/// Noise levels above this are accepted but flagged.
pub const LARGE_NOISE: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NoiseError {
    #[error("noise level must lie in [0, 1), got {0}")]
    Level(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    eta: f64,
    seed: u64,
}

impl NoiseSpec {
    pub fn new(eta: f64, seed: u64) -> Result<Self, NoiseError> {
        if !(eta.is_finite() && (0.0..1.0).contains(&eta)) {
            return Err(NoiseError::Level(eta));
        }
        Ok(Self { eta, seed })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn is_large(&self) -> bool {
        self.eta > LARGE_NOISE
    }
}

/// Uniform draw on `[−1, 1]` from the top 53 bits of a 64-bit word.
fn symmetric_uniform(word: u64) -> f64 {
    let unit = (word >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    2.0 * unit - 1.0
}

/// The pair `(X₁, X₂)` for entry `(i, j)`.
pub fn entry_draws(seed: u64, i: usize, j: usize) -> (f64, f64) {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(((i as u64) << 32) | j as u64);
    let x1 = symmetric_uniform(rng.next_u64());
    let x2 = symmetric_uniform(rng.next_u64());
    (x1, x2)
}

/// Returns a contaminated copy of `u`; `η = 0` returns the input unchanged.
pub fn contaminate(u: &FarFieldMatrix, spec: &NoiseSpec) -> FarFieldMatrix {
    let n = u.n();
    if spec.eta == 0.0 {
        return u.with_values(u.values().clone(), 0.0);
    }
    let v = u.values();
    let noisy = ComplexMatrix::from_fn(n, n, |i, j| {
        let (x1, x2) = entry_draws(spec.seed, i, j);
        v[(i, j)] * Complex64::new(1.0 + spec.eta * x1, spec.eta * x2)
    });
    u.with_values(noisy, spec.eta)
}
