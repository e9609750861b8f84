//! Exterior scattering by a generalized impedance obstacle and the
//! far-field matrix it produces.
//!
//! The scattered field is sought as `u_s = D φ − iη S φ`. Imposing
//! `∂_ν u_s + Z u_s = −(∂_ν u_i + Z u_i)` on the exterior traces gives
//!
//! ```text
//! [ T − iη(K' − I/2) + Z (K + I/2 − iη S) ] φ = −(γ1 u_i + Z γ0 u_i)
//! ```
//!
//! and the far field is `FF_D φ − iη FF_S φ`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent when std is in the dependency graph
use num_traits::Float;
use thiserror::Error;

use crate::geometry::{Curve, CurveGrid, GeometryError};
use crate::linalg::{norm1, ComplexMatrix, LinalgError, LuFactors};
use crate::potentials::{assemble_operators, directions, far_field_matrices, PotentialError};
use crate::special::{jy_sequences, MAX_ORDER};
use crate::surface::{assemble_impedance, ImpedanceParams, SurfaceError};
use crate::I;

/// Relative pivot size below which the system is treated as singular.
pub const RESONANCE_PIVOT_RATIO: f64 = 1e-12;

/// Below this many nodes per wavelength the solver emits a warning.
pub const WARN_NODES_PER_WAVELENGTH: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ForwardError {
    #[error("invalid scattering configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error("system is numerically singular at k = {k} (relative pivot {pivot_ratio:e}); perturb the wavenumber")]
    Resonance { k: f64, pivot_ratio: f64 },
    #[error("k^2 = {k2} is (numerically) an eigenvalue of -Δ for the impedance condition: mode {mode} has a vanishing denominator")]
    ImpedanceEigenvalue { k2: f64, mode: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Discrete far-field matrix `U[i][j] ≈ u∞(x̂_i, θ̂_j)` on uniform angles
/// `2πi/n`; rows index observation, columns incidence.
#[derive(Debug, Clone, PartialEq)]
pub struct FarFieldMatrix {
    values: ComplexMatrix,
    k: f64,
    eta: f64,
}

impl FarFieldMatrix {
    pub fn new(values: ComplexMatrix, k: f64, eta: f64) -> Result<Self, ForwardError> {
        if !values.is_square() {
            return Err(ForwardError::Config(format!(
                "far-field matrix must be square, got {}x{}",
                values.rows(),
                values.cols()
            )));
        }
        if !values.is_finite() {
            return Err(ForwardError::Config("far-field matrix has non-finite entries".into()));
        }
        if !(k.is_finite() && k > 0.0) {
            return Err(ForwardError::Config(format!("wavenumber must be positive, got {k}")));
        }
        if !(eta.is_finite() && eta >= 0.0) {
            return Err(ForwardError::Config(format!("noise level must be non-negative, got {eta}")));
        }
        Ok(Self { values, k, eta })
    }

    pub fn n(&self) -> usize {
        self.values.rows()
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// Relative noise level the data were contaminated with (0 for clean data).
    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn values(&self) -> &ComplexMatrix {
        &self.values
    }

    pub fn into_values(self) -> ComplexMatrix {
        self.values
    }

    pub(crate) fn with_values(&self, values: ComplexMatrix, eta: f64) -> Self {
        Self { values, k: self.k, eta }
    }

    /// `max_ij |U_ij − V_ij| / max_ij |V_ij|`.
    pub fn relative_sup_distance(&self, reference: &FarFieldMatrix) -> f64 {
        (&self.values - &reference.values).max_abs() / reference.values.max_abs()
    }
}

/// Everything that defines one forward simulation.
#[derive(Debug, Clone)]
pub struct ScatteringConfig {
    pub curve: Curve,
    pub impedance: ImpedanceParams,
    pub k: f64,
    /// Number of incident and observation directions.
    pub n: usize,
    /// Number of quadrature nodes on the boundary.
    pub m: usize,
    /// Combined-field coupling `η_c`.
    pub coupling: f64,
}

impl ScatteringConfig {
    /// Builds a configuration with coupling `η_c = k`; checks `n >= 8`,
    /// `m >= max(64, 2n)` and `m` even.
    pub fn new(curve: Curve, impedance: ImpedanceParams, k: f64, n: usize, m: usize) -> Result<Self, ForwardError> {
        let cfg = Self { curve, impedance, k, n, m, coupling: k };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_coupling(mut self, coupling: f64) -> Result<Self, ForwardError> {
        self.coupling = coupling;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), ForwardError> {
        if !(self.k.is_finite() && self.k > 0.0) {
            return Err(ForwardError::Config(format!("wavenumber must be positive, got {}", self.k)));
        }
        if self.n < 8 {
            return Err(ForwardError::Config(format!("need at least 8 directions, got {}", self.n)));
        }
        let min_m = 64.max(2 * self.n);
        if self.m < min_m || self.m % 2 != 0 {
            return Err(ForwardError::Config(format!(
                "quadrature node count must be even and at least {min_m}, got {}",
                self.m
            )));
        }
        if !(self.coupling.is_finite() && self.coupling != 0.0) {
            return Err(ForwardError::Config("combined-field coupling must be finite and nonzero".into()));
        }
        Ok(())
    }
}

/// Solver diagnostics reported alongside the far field.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverDiagnostics {
    pub m: usize,
    pub nodes_per_wavelength: f64,
    /// Estimate of the 1-norm condition number of the boundary system.
    pub condition_estimate: f64,
    pub min_pivot_ratio: f64,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct ForwardSolution {
    pub far_field: FarFieldMatrix,
    pub diagnostics: SolverDiagnostics,
}

/// Solves the scattering problem for `n` plane waves and returns `𝕌ₙ`.
pub fn solve_forward(config: &ScatteringConfig) -> Result<ForwardSolution, ForwardError> {
    config.validate()?;
    config.curve.validate(256)?;
    let grid = CurveGrid::new(&config.curve, config.m)?;
    solve_on_grid(&grid, &config.impedance, config.k, config.n, config.coupling)
}

/// Lower-level entry point without the `m >= 2n` rule, for convergence
/// studies on coarse grids.
pub fn solve_on_grid(
    grid: &CurveGrid,
    impedance: &ImpedanceParams,
    k: f64,
    n: usize,
    coupling: f64,
) -> Result<ForwardSolution, ForwardError> {
    let m = grid.len();
    let ops = assemble_operators(grid, k)?;
    let z = assemble_impedance(grid, impedance)?.matrix;
    let ic = Complex64::new(0.0, coupling);
    let half = Complex64::new(0.5, 0.0);

    // trace operators of u_s = Dφ − iη Sφ
    let mut dirichlet = &ops.double - &ops.single.scale(ic);
    let mut neumann = &ops.hypersingular - &ops.adjoint_double.scale(ic);
    for i in 0..m {
        dirichlet[(i, i)] += half;
        neumann[(i, i)] += ic * half;
    }
    let system = &neumann + &(&z * &dirichlet);

    let lu = match LuFactors::new(&system) {
        Ok(lu) => lu,
        Err(LinalgError::Singular { .. }) => return Err(ForwardError::Resonance { k, pivot_ratio: 0.0 }),
        Err(e) => return Err(e.into()),
    };
    let pivot_ratio = lu.min_pivot_ratio();
    if pivot_ratio < RESONANCE_PIVOT_RATIO {
        return Err(ForwardError::Resonance { k, pivot_ratio });
    }
    let condition_estimate = norm1(&system) * lu.inverse_norm1_estimate();

    let dirs = directions(n);
    let mut rhs = ComplexMatrix::zeros(m, n);
    for (j, theta) in dirs.iter().enumerate() {
        let trace: Vec<Complex64> = grid
            .points
            .iter()
            .map(|x| (I * k * (theta[0] * x[0] + theta[1] * x[1])).exp())
            .collect();
        let z_trace = z.matvec(&trace)?;
        for i in 0..m {
            let nu = grid.normals[i];
            let normal = I * k * (theta[0] * nu[0] + theta[1] * nu[1]) * trace[i];
            rhs[(i, j)] = -(normal + z_trace[i]);
        }
    }
    let density = lu.solve(&rhs)?;

    let ff = far_field_matrices(grid, k, n);
    let combined = &ff.double - &ff.single.scale(ic);
    let values = &combined * &density;
    if !values.is_finite() {
        return Err(ForwardError::Resonance { k, pivot_ratio });
    }

    let ppw = crate::geometry::nodes_per_wavelength(grid, k);
    let mut warnings = Vec::new();
    if ppw < WARN_NODES_PER_WAVELENGTH {
        warnings.push(format!("only {ppw:.1} nodes per wavelength; results may be inaccurate"));
    }
    if condition_estimate > 1e10 {
        warnings.push(format!("boundary system is ill conditioned (cond ≈ {condition_estimate:.2e})"));
    }
    Ok(ForwardSolution {
        far_field: FarFieldMatrix { values, k, eta: 0.0 },
        diagnostics: SolverDiagnostics {
            m,
            nodes_per_wavelength: ppw,
            condition_estimate,
            min_pivot_ratio: pivot_ratio,
            warnings,
        },
    })
}

/// Far-field prefactor of the mode series: `u∞ = −4i Σ a_m e^{imΔφ}` under
/// the `γ(2)` normalization.
pub const CIRCLE_FAR_FIELD_FACTOR: Complex64 = Complex64::new(0.0, -4.0);

/// Smallest mode count accepted by [`circle_series_oracle`]:
/// `ceil(3kR) + 15`.
pub fn min_circle_modes(radius: f64, k: f64) -> usize {
    (3.0 * k * radius).ceil() as usize + 15
}

/// Scattering coefficients `a_m`, `m = 0..=modes`, of the disk of radius
/// `radius` with constant impedance coefficients:
/// `a_m = −(k J_m'(kR) + z_m J_m(kR)) / (k H_m'(kR) + z_m H_m(kR))`,
/// `z_m = −μ m²/R² − λ`. By symmetry `a_{−m} = a_m`.
pub fn circle_coefficients(radius: f64, k: f64, mu: Complex64, lambda: Complex64, modes: usize) -> Result<Vec<Complex64>, ForwardError> {
    if !(radius.is_finite() && radius > 0.0 && k.is_finite() && k > 0.0) {
        return Err(ForwardError::Config("radius and wavenumber must be positive".into()));
    }
    if modes + 1 > MAX_ORDER as usize {
        return Err(ForwardError::Config(format!("at most {} modes supported", MAX_ORDER - 1)));
    }
    let x = k * radius;
    let (j, y) = jy_sequences(modes as u32 + 1, x);
    let mut out = Vec::with_capacity(modes + 1);
    for m in 0..=modes {
        let jm = j[m];
        let hm = Complex64::new(j[m], y[m]);
        let (jd, hd) = if m == 0 {
            (-j[1], -Complex64::new(j[1], y[1]))
        } else {
            let r = m as f64 / x;
            (j[m - 1] - r * j[m], Complex64::new(j[m - 1], y[m - 1]) - r * hm)
        };
        let zm = -mu * (m * m) as f64 / (radius * radius) - lambda;
        let num = k * jd + zm * jm;
        let den = k * hd + zm * hm;
        if den.norm() < 1e-12 {
            return Err(ForwardError::ImpedanceEigenvalue { k2: k * k, mode: m });
        }
        out.push(-num / den);
    }
    Ok(out)
}

/// Far-field matrix of the disk by the mode series, the independent
/// reference for [`solve_forward`].
pub fn circle_series_oracle(
    radius: f64,
    k: f64,
    mu: Complex64,
    lambda: Complex64,
    n: usize,
    modes: usize,
) -> Result<FarFieldMatrix, ForwardError> {
    let min = min_circle_modes(radius, k);
    if modes < min {
        return Err(ForwardError::Config(format!("need at least {min} modes, got {modes}")));
    }
    if n == 0 {
        return Err(ForwardError::Config("need at least one direction".into()));
    }
    let a = circle_coefficients(radius, k, mu, lambda, modes)?;
    // U depends only on (i − j) mod n
    let by_offset: Vec<Complex64> = (0..n)
        .map(|d| {
            let delta = core::f64::consts::TAU * d as f64 / n as f64;
            let series: Complex64 = a[0]
                + a.iter().enumerate().skip(1).map(|(m, &am)| 2.0 * am * (m as f64 * delta).cos()).sum::<Complex64>();
            CIRCLE_FAR_FIELD_FACTOR * series
        })
        .collect();
    let values = ComplexMatrix::from_fn(n, n, |i, j| by_offset[(i + n - j) % n]);
    Ok(FarFieldMatrix { values, k, eta: 0.0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn config_invariants() {
        let imp = ImpedanceParams::new(0.1, 0.0).unwrap();
        assert!(ScatteringConfig::new(Curve::Kite, imp.clone(), 2.0, 50, 100).is_ok());
        assert!(ScatteringConfig::new(Curve::Kite, imp.clone(), 2.0, 50, 98).is_err());
        assert!(ScatteringConfig::new(Curve::Kite, imp.clone(), 2.0, 4, 64).is_err());
        assert!(ScatteringConfig::new(Curve::Kite, imp.clone(), 2.0, 8, 63).is_err());
        assert!(ScatteringConfig::new(Curve::Kite, imp.clone(), -2.0, 8, 64).is_err());
        let cfg = ScatteringConfig::new(Curve::Kite, imp, 2.0, 8, 64).unwrap();
        assert!(cfg.with_coupling(0.0).is_err());
    }

    #[test]
    fn oracle_is_circulant() {
        let u = circle_series_oracle(1.0, 2.0, c(0.1, 0.0), c(0.0, 0.0), 12, 30).unwrap();
        let v = u.values();
        for i in 0..12 {
            for j in 0..12 {
                assert_eq!(v[(i, j)], v[((i + 1) % 12, (j + 1) % 12)]);
            }
        }
    }

    #[test]
    fn oracle_rejects_too_few_modes() {
        assert!(circle_series_oracle(1.0, 2.0, c(0.1, 0.0), c(0.0, 0.0), 12, 20).is_err());
    }

    #[test]
    fn dirichlet_limit() {
        let (r, k) = (1.0, 2.0);
        let modes = min_circle_modes(r, k);
        let a = circle_coefficients(r, k, c(0.0, 0.0), c(1e6, 0.0), modes).unwrap();
        let (j, y) = jy_sequences(modes as u32, k * r);
        for m in 0..=modes {
            let dir = -j[m] / Complex64::new(j[m], y[m]);
            assert!((a[m] - dir).norm() < 1e-4, "mode {m}");
        }
    }

    #[test]
    fn tail_decay() {
        for kr in [0.5, 1.0, 2.0, 4.0, 8.0, 16.0] {
            let modes = min_circle_modes(1.0, kr);
            let a = circle_coefficients(1.0, kr, c(0.1, 0.0), c(0.0, 0.0), modes).unwrap();
            assert!(a[modes].norm() <= 1e-12, "kR = {kr}: |a_M| = {:e}", a[modes].norm());
        }
    }
}
