//! Factorization-method inversion of a far-field matrix.
//!
//! From the data `U` we form the self-adjoint positive matrix
//! `F# = |Re U| + |Im U|` (operator real/imaginary parts), diagonalize it and,
//! for each sampling point `z`, evaluate the Tikhonov-regularized Picard sum
//!
//! ```text
//! w(z) = ( Σ_j λ_j / (α + λ_j)² |(e_j, φ_z)|² )⁻¹
//! ```
//!
//! with `α` chosen per point by the Morozov discrepancy principle
//! `Σ_j (α² − δ² λ_j) / (α + λ_j)² |(e_j, φ_z)|² = 0`. The reported
//! indicator is `W = w_monopole + min_θ w_dipole(θ)`; it is large inside the
//! obstacle and small outside.
//!
//! Inner products `(e_j, φ)` are plain unweighted dot products over the `n`
//! direction samples, and test functions are normalized in that same norm.
//! `δ` is measured in these units.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use num_complex::Complex64;
#[allow(unused_imports)] // inherent when std is in the dependency graph
use num_traits::Float;
use thiserror::Error;

use crate::forward::FarFieldMatrix;
use crate::geometry::Point;
use crate::linalg::{hermitian_abs, hermitian_eig, ComplexMatrix, LinalgError};
use crate::I;

/// Relative eigenvalue floor: eigenvalues below `1e-14·λ₁` are clamped.
pub const EIGENVALUE_FLOOR: f64 = 1e-14;
/// `α_lo = 1e-14·δλ₁`, the lower end of the Morozov bracket.
pub const ALPHA_LOWER_FACTOR: f64 = 1e-14;
/// Relative floor on the automatic `δ`: `δ >= 1e-8·√λ₁`.
pub const DELTA_FLOOR: f64 = 1e-8;
/// Iteration cap for the Morozov bisection.
pub const MAX_BISECTION_STEPS: usize = 200;
/// Projections below this count as zero.
pub const DEGENERATE_PROJECTION: f64 = 1e-300;

/// Dipole polarization angles used by default: `{0, π/4, 3π/4, π}`.
pub const STANDARD_THETA_SET: [f64; 4] = [0.0, FRAC_PI_4, 3.0 * FRAC_PI_4, PI];
/// Alternative evenly spaced set `{0, π/4, π/2, 3π/4}`.
pub const QUARTER_THETA_SET: [f64; 4] = [0.0, FRAC_PI_4, FRAC_PI_2, 3.0 * FRAC_PI_4];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FactorizationError {
    #[error("far-field data must be a square matrix, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("F# has no positive eigenvalue")]
    ZeroSpectrum,
    #[error("test function at ({0}, {1}) has no component on the eigenbasis")]
    DegenerateTestFunction(f64, f64),
    #[error("test function has zero norm")]
    ZeroTestFunction,
    #[error("invalid inversion setting: {0}")]
    Config(String),
}

/// Which imaginary part enters `F#`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FSharpForm {
    /// `|Re U| + |Im U|`, robust to sign-indefinite `Im U` under noise.
    #[default]
    AbsoluteImaginary,
    /// `|Re U| + Im U`, the form of the continuous theory.
    SignedImaginary,
}

/// `F#` built from a square matrix.
pub fn f_sharp_matrix(u: &ComplexMatrix, form: FSharpForm) -> Result<ComplexMatrix, FactorizationError> {
    if !u.is_square() {
        return Err(FactorizationError::NotSquare(u.rows(), u.cols()));
    }
    let re = u.hermitian_part();
    let im = u.imaginary_part();
    let abs_re = hermitian_abs(&re)?;
    let im_term = match form {
        FSharpForm::AbsoluteImaginary => hermitian_abs(&im)?,
        FSharpForm::SignedImaginary => im,
    };
    Ok(&abs_re + &im_term)
}

/// Eigenpairs of `F#` in descending order.
#[derive(Debug, Clone)]
pub struct SpectralData {
    /// Eigenvalues after clamping at the floor, descending.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns.
    pub vectors: ComplexMatrix,
    pub k: f64,
    pub eta: f64,
    /// Smallest eigenvalue before clamping.
    pub min_raw_eigenvalue: f64,
    /// Number of eigenvalues raised to the floor.
    pub clamped: usize,
}

impl SpectralData {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn largest(&self) -> f64 {
        self.values[0]
    }

    /// `ρ_j = |(e_j, φ)|²`.
    pub fn projections(&self, phi: &[Complex64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|j| {
                let s: Complex64 = (0..n).map(|i| self.vectors[(i, j)].conj() * phi[i]).sum();
                s.norm_sqr()
            })
            .collect()
    }
}

/// Builds and diagonalizes `F#` for the data `u`.
pub fn build_f_sharp(u: &FarFieldMatrix, form: FSharpForm) -> Result<SpectralData, FactorizationError> {
    let fs = f_sharp_matrix(u.values(), form)?;
    let eig = hermitian_eig(&fs)?;
    let lambda1 = eig.values[0];
    if lambda1.is_nan() || lambda1 <= 0.0 {
        return Err(FactorizationError::ZeroSpectrum);
    }
    let floor = EIGENVALUE_FLOOR * lambda1;
    let min_raw = *eig.values.last().expect("nonempty");
    let mut clamped = 0;
    let values = eig
        .values
        .iter()
        .map(|&l| {
            if l < floor {
                clamped += 1;
                floor
            } else {
                l
            }
        })
        .collect();
    Ok(SpectralData { values, vectors: eig.vectors, k: u.k(), eta: u.eta(), min_raw_eigenvalue: min_raw, clamped })
}

/// Point source or dipole test function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestKind {
    Monopole,
    /// Polarization `p(θ) = (cos θ, sin θ)`.
    Dipole { theta: f64 },
}

/// Samples of a test function on the `n` uniform directions, normalized to
/// unit Euclidean norm.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction {
    pub z: Point,
    pub kind: TestKind,
    pub samples: Vec<Complex64>,
}

/// Unnormalized samples: `e^{−ik x̂_i·z}` for a monopole,
/// `p(θ)·x̂_i e^{−ik x̂_i·z}` for a dipole, `x̂_i` at angle `2πi/n`.
pub fn raw_test_samples(z: Point, kind: TestKind, n: usize, k: f64) -> Vec<Complex64> {
    (0..n)
        .map(|i| {
            let a = TAU * i as f64 / n as f64;
            let xh = [a.cos(), a.sin()];
            let phase = (-I * k * (xh[0] * z[0] + xh[1] * z[1])).exp();
            match kind {
                TestKind::Monopole => phase,
                TestKind::Dipole { theta } => (theta.cos() * xh[0] + theta.sin() * xh[1]) * phase,
            }
        })
        .collect()
}

pub fn make_test_function(z: Point, kind: TestKind, n: usize, k: f64) -> Result<TestFunction, FactorizationError> {
    let mut samples = raw_test_samples(z, kind, n, k);
    let norm = samples.iter().map(|s| s.norm_sqr()).sum::<f64>().sqrt();
    if norm.is_nan() || norm <= 0.0 {
        return Err(FactorizationError::ZeroTestFunction);
    }
    samples.iter_mut().for_each(|s| *s /= norm);
    Ok(TestFunction { z, kind, samples })
}

/// How a Morozov root was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorozovStatus {
    /// Root inside `(α_lo, δλ₁]`.
    Converged,
    /// The equation is already positive at `α_lo`; `α_lo` is returned.
    BelowInterval,
    /// The equation is still negative at `δλ₁` (possible when `λ₁ < 1`);
    /// the root was located on `(δλ₁, δ√λ₁]`, where the equation is
    /// guaranteed to change sign.
    AboveInterval,
}

impl MorozovStatus {
    pub fn is_fallback(self) -> bool {
        self != MorozovStatus::Converged
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MorozovRoot {
    pub alpha: f64,
    /// `|equation(α)|`.
    pub residual: f64,
    pub iterations: usize,
    pub status: MorozovStatus,
}

/// `Σ_j (α² − δ² λ_j) / (α + λ_j)² ρ_j`, increasing in `α`.
pub fn morozov_equation(values: &[f64], rho: &[f64], delta: f64, alpha: f64) -> f64 {
    let d2 = delta * delta;
    values
        .iter()
        .zip(rho)
        .map(|(&l, &r)| (alpha * alpha - d2 * l.abs()) / ((alpha + l) * (alpha + l)) * r)
        .sum()
}

/// Solves the discrepancy equation for `α` by bisection in log scale on
/// `(1e-14·δλ₁, δλ₁]`.
pub fn morozov_alpha(values: &[f64], rho: &[f64], delta: f64) -> Result<MorozovRoot, FactorizationError> {
    if !(delta.is_finite() && delta > 0.0) {
        return Err(FactorizationError::Config(format!("delta must be positive, got {delta}")));
    }
    if values.is_empty() || values.len() != rho.len() {
        return Err(FactorizationError::Config("eigenvalues and projections differ in length".into()));
    }
    let lambda1 = values.iter().cloned().fold(f64::MIN, f64::max);
    if lambda1.is_nan() || lambda1 <= 0.0 {
        return Err(FactorizationError::ZeroSpectrum);
    }
    let g = |a: f64| morozov_equation(values, rho, delta, a);
    let mut hi = delta * lambda1;
    let lo_bound = ALPHA_LOWER_FACTOR * hi;

    let g_lo = g(lo_bound);
    if g_lo > 0.0 {
        return Ok(MorozovRoot { alpha: lo_bound, residual: g_lo.abs(), iterations: 0, status: MorozovStatus::BelowInterval });
    }
    let mut status = MorozovStatus::Converged;
    if g(hi) < 0.0 {
        status = MorozovStatus::AboveInterval;
        hi = delta * lambda1.sqrt();
    }
    let mut lo = lo_bound;
    let (mut g_lo, mut g_hi) = (g_lo, g(hi));
    let mut iterations = 0;
    while iterations < MAX_BISECTION_STEPS {
        iterations += 1;
        let mid = (lo * hi).sqrt();
        if !(mid > lo && mid < hi) {
            break;
        }
        let gm = g(mid);
        if gm == 0.0 {
            return Ok(MorozovRoot { alpha: mid, residual: 0.0, iterations, status });
        }
        if gm < 0.0 {
            lo = mid;
            g_lo = gm;
        } else {
            hi = mid;
            g_hi = gm;
        }
    }
    let (alpha, residual) = if g_lo.abs() <= g_hi.abs() { (lo, g_lo.abs()) } else { (hi, g_hi.abs()) };
    Ok(MorozovRoot { alpha, residual, iterations, status })
}

/// Result of one regularized Picard evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndicatorValue {
    pub w: f64,
    pub alpha: f64,
    pub status: MorozovStatus,
}

/// `w = (Σ_j λ_j/(α+λ_j)² ρ_j)⁻¹` from eigenvalues and projections.
pub fn picard_indicator(values: &[f64], rho: &[f64], alpha: f64) -> f64 {
    let s: f64 = values.iter().zip(rho).map(|(&l, &r)| l / ((alpha + l) * (alpha + l)) * r).sum();
    1.0 / s
}

/// Morozov-regularized indicator `w` for one normalized test function.
pub fn regularized_indicator(spectral: &SpectralData, phi: &TestFunction, delta: f64) -> Result<IndicatorValue, FactorizationError> {
    let rho = spectral.projections(&phi.samples);
    if rho.iter().all(|&r| r < DEGENERATE_PROJECTION) {
        return Err(FactorizationError::DegenerateTestFunction(phi.z[0], phi.z[1]));
    }
    let root = morozov_alpha(&spectral.values, &rho, delta)?;
    Ok(IndicatorValue { w: picard_indicator(&spectral.values, &rho, root.alpha), alpha: root.alpha, status: root.status })
}

/// Indicator values at one sampling point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointIndicator {
    pub z: Point,
    /// `W = w_mono + w_dip`.
    pub total: f64,
    pub monopole: f64,
    /// `min_θ w_dipole(θ)`.
    pub dipole: f64,
    pub alpha_monopole: f64,
    /// Morozov fallbacks among the test functions at this point.
    pub fallbacks: u32,
}

/// `W(z) = w(monopole) + min_{θ ∈ theta_set} w(dipole θ)`.
pub fn combined_indicator(spectral: &SpectralData, z: Point, delta: f64, theta_set: &[f64]) -> Result<PointIndicator, FactorizationError> {
    if theta_set.is_empty() {
        return Err(FactorizationError::Config("dipole angle set is empty".into()));
    }
    let n = spectral.dim();
    let k = spectral.k;
    let mono = regularized_indicator(spectral, &make_test_function(z, TestKind::Monopole, n, k)?, delta)?;
    let mut fallbacks = mono.status.is_fallback() as u32;
    let mut dipole = f64::INFINITY;
    for &theta in theta_set {
        let v = regularized_indicator(spectral, &make_test_function(z, TestKind::Dipole { theta }, n, k)?, delta)?;
        fallbacks += v.status.is_fallback() as u32;
        dipole = dipole.min(v.w);
    }
    Ok(PointIndicator { z, total: mono.w + dipole, monopole: mono.w, dipole, alpha_monopole: mono.alpha, fallbacks })
}

/// Rectangular sampling grid with inclusive end points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Default for SamplingGrid {
    /// `[−3, 3]²` with 80×80 points.
    fn default() -> Self {
        Self::square(3.0, 80)
    }
}

impl SamplingGrid {
    pub fn square(half_width: f64, resolution: usize) -> Self {
        Self { x_min: -half_width, x_max: half_width, y_min: -half_width, y_max: half_width, nx: resolution, ny: resolution }
    }

    pub fn validate(&self) -> Result<(), FactorizationError> {
        let finite = [self.x_min, self.x_max, self.y_min, self.y_max].iter().all(|v| v.is_finite());
        if !finite || self.x_min >= self.x_max || self.y_min >= self.y_max {
            return Err(FactorizationError::Config("sampling grid bounds are degenerate".into()));
        }
        if self.nx < 2 || self.ny < 2 {
            return Err(FactorizationError::Config("sampling grid needs at least 2 points per axis".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Point with linear index `idx = iy·nx + ix` (x varies fastest).
    pub fn point(&self, idx: usize) -> Point {
        let (iy, ix) = (idx / self.nx, idx % self.nx);
        let x = self.x_min + (self.x_max - self.x_min) * ix as f64 / (self.nx - 1) as f64;
        let y = self.y_min + (self.y_max - self.y_min) * iy as f64 / (self.ny - 1) as f64;
        [x, y]
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }
}

/// Choice of the noise bound `δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeltaRule {
    /// `δ = max(1e-8·√λ₁, η·√‖F#‖₂)` with `η` from the data.
    Auto,
    Fixed(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct InversionSettings {
    pub grid: SamplingGrid,
    pub delta: DeltaRule,
    pub theta_set: Vec<f64>,
    pub form: FSharpForm,
}

impl Default for InversionSettings {
    fn default() -> Self {
        Self { grid: SamplingGrid::default(), delta: DeltaRule::Auto, theta_set: STANDARD_THETA_SET.to_vec(), form: FSharpForm::default() }
    }
}

/// Resolves the noise bound for `spectral`.
pub fn resolve_delta(rule: DeltaRule, spectral: &SpectralData) -> Result<f64, FactorizationError> {
    let sqrt_l1 = spectral.largest().sqrt();
    match rule {
        DeltaRule::Auto => Ok((DELTA_FLOOR * sqrt_l1).max(spectral.eta * sqrt_l1)),
        DeltaRule::Fixed(d) if d.is_finite() && d > 0.0 => Ok(d),
        DeltaRule::Fixed(d) => Err(FactorizationError::Config(format!("delta must be positive, got {d}"))),
    }
}

/// Spectral data plus resolved settings; evaluates the indicator pointwise.
#[derive(Debug, Clone)]
pub struct Inversion {
    pub spectral: SpectralData,
    pub delta: f64,
    pub settings: InversionSettings,
}

impl Inversion {
    /// `k` must match the wavenumber stored with the data.
    pub fn new(u: &FarFieldMatrix, k: f64, settings: InversionSettings) -> Result<Self, FactorizationError> {
        if (k - u.k()).abs() > 1e-12 * k.abs().max(1.0) {
            return Err(FactorizationError::Config(format!("wavenumber {k} differs from the data's k = {}", u.k())));
        }
        settings.grid.validate()?;
        if settings.theta_set.is_empty() {
            return Err(FactorizationError::Config("dipole angle set is empty".into()));
        }
        let spectral = build_f_sharp(u, settings.form)?;
        let delta = resolve_delta(settings.delta, &spectral)?;
        Ok(Self { spectral, delta, settings })
    }

    pub fn evaluate(&self, z: Point) -> Result<PointIndicator, FactorizationError> {
        combined_indicator(&self.spectral, z, self.delta, &self.settings.theta_set)
    }

    /// Evaluates the whole sampling grid in index order.
    pub fn run(&self) -> Result<IndicatorMap, FactorizationError> {
        let points = self.settings.grid.points().map(|z| self.evaluate(z)).collect::<Result<Vec<_>, _>>()?;
        self.assemble(points)
    }

    /// Builds the map from per-point results listed in grid index order.
    pub fn assemble(&self, points: Vec<PointIndicator>) -> Result<IndicatorMap, FactorizationError> {
        if points.len() != self.settings.grid.len() {
            return Err(FactorizationError::Config("point count differs from the grid size".into()));
        }
        if let Some(p) = points.iter().find(|p| !(p.total.is_finite() && p.total > 0.0)) {
            return Err(FactorizationError::Config(format!("indicator not positive and finite at ({}, {})", p.z[0], p.z[1])));
        }
        let fallbacks = points.iter().map(|p| p.fallbacks as usize).sum();
        Ok(IndicatorMap {
            grid: self.settings.grid,
            points,
            delta: self.delta,
            morozov_fallbacks: fallbacks,
            clamped_eigenvalues: self.spectral.clamped,
            largest_eigenvalue: self.spectral.largest(),
        })
    }
}

/// Runs the inversion serially over the sampling grid.
pub fn run_inversion(u: &FarFieldMatrix, k: f64, settings: InversionSettings) -> Result<IndicatorMap, FactorizationError> {
    Inversion::new(u, k, settings)?.run()
}

/// Indicator values over a sampling grid.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorMap {
    pub grid: SamplingGrid,
    /// One entry per grid point, index `iy·nx + ix`.
    pub points: Vec<PointIndicator>,
    pub delta: f64,
    pub morozov_fallbacks: usize,
    pub clamped_eigenvalues: usize,
    pub largest_eigenvalue: f64,
}

impl IndicatorMap {
    pub fn totals(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.total)
    }

    pub fn min_max(&self) -> (f64, f64) {
        self.totals().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
    }
}

/// Median of a slice (average of the two middle values for even length).
pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let n = values.len();
    Some(if n % 2 == 1 { values[n / 2] } else { 0.5 * (values[n / 2 - 1] + values[n / 2]) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn single_mode_closed_form() {
        for &(l, d) in &[(4.0, 0.1), (1.0, 0.01), (250.0, 0.003)] {
            let r = morozov_alpha(&[l], &[0.7], d).unwrap();
            let exact = d * f64::sqrt(l);
            assert!((r.alpha - exact).abs() <= 1e-12 * exact, "{} vs {}", r.alpha, exact);
            assert_eq!(r.status, MorozovStatus::Converged);
        }
    }

    #[test]
    fn small_top_eigenvalue_extends_bracket() {
        // λ₁ < 1: δ√λ₁ > δλ₁, root lies above the nominal interval
        let r = morozov_alpha(&[0.25], &[1.0], 0.1).unwrap();
        assert_eq!(r.status, MorozovStatus::AboveInterval);
        assert!((r.alpha - 0.05).abs() < 1e-15);
    }

    #[test]
    fn positive_at_lower_end_falls_back() {
        // a huge projection on a tiny eigenvalue makes the equation positive near zero
        let values = [1.0, 1e-30];
        let rho = [1e-30, 1.0];
        let r = morozov_alpha(&values, &rho, 0.1).unwrap();
        assert_eq!(r.status, MorozovStatus::BelowInterval);
        assert_eq!(r.alpha, ALPHA_LOWER_FACTOR * 0.1);
    }

    #[test]
    fn identity_spectrum_indicator() {
        // all λ = 1: α = δ and w = (1 + δ)²
        let n = 5;
        let spectral = SpectralData {
            values: vec![1.0; n],
            vectors: ComplexMatrix::identity(n),
            k: 2.0,
            eta: 0.0,
            min_raw_eigenvalue: 1.0,
            clamped: 0,
        };
        let phi = make_test_function([0.3, -0.2], TestKind::Monopole, n, 2.0).unwrap();
        let delta = 0.05;
        let v = regularized_indicator(&spectral, &phi, delta).unwrap();
        assert!((v.alpha - delta).abs() < 1e-15);
        assert!((v.w - (1.0 + delta).powi(2)).abs() < 1e-13);
    }

    #[test]
    fn monopole_at_origin_is_flat() {
        let n = 16;
        let raw = raw_test_samples([0.0, 0.0], TestKind::Monopole, n, 2.0);
        assert!(raw.iter().all(|v| (v - raw[0]).norm() == 0.0));
        let tf = make_test_function([0.0, 0.0], TestKind::Monopole, n, 2.0).unwrap();
        for s in &tf.samples {
            assert!((s.norm() - 1.0 / (n as f64).sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn dipole_norm_at_origin() {
        let n = 24;
        let raw = raw_test_samples([0.0, 0.0], TestKind::Dipole { theta: 0.0 }, n, 2.0);
        let norm = raw.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        assert!((norm - (n as f64 / 2.0).sqrt()).abs() < 1e-13);
    }

    #[test]
    fn opposite_dipoles_differ_by_sign() {
        let z = [0.4, -1.1];
        let a = make_test_function(z, TestKind::Dipole { theta: 0.0 }, 20, 2.0).unwrap();
        let b = make_test_function(z, TestKind::Dipole { theta: PI }, 20, 2.0).unwrap();
        for (x, y) in a.samples.iter().zip(&b.samples) {
            assert!((x + y).norm() < 1e-15);
        }
    }

    #[test]
    fn grid_indexing() {
        let g = SamplingGrid::default();
        assert_eq!(g.len(), 6400);
        assert_eq!(g.point(0), [-3.0, -3.0]);
        assert_eq!(g.point(79), [3.0, -3.0]);
        assert_eq!(g.point(6399), [3.0, 3.0]);
        assert!(SamplingGrid { nx: 1, ..g }.validate().is_err());
        assert!(SamplingGrid { x_min: 3.0, ..g }.validate().is_err());
    }

    #[test]
    fn delta_rules() {
        let spectral = SpectralData {
            values: vec![16.0, 1.0],
            vectors: ComplexMatrix::identity(2),
            k: 2.0,
            eta: 0.01,
            min_raw_eigenvalue: 1.0,
            clamped: 0,
        };
        assert!((resolve_delta(DeltaRule::Auto, &spectral).unwrap() - 0.04).abs() < 1e-15);
        assert_eq!(resolve_delta(DeltaRule::Fixed(0.3), &spectral).unwrap(), 0.3);
        assert!(resolve_delta(DeltaRule::Fixed(0.0), &spectral).is_err());
        let clean = SpectralData { eta: 0.0, ..spectral };
        assert!((resolve_delta(DeltaRule::Auto, &clean).unwrap() - 4e-8).abs() < 1e-20);
    }

    #[test]
    fn median_values() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), Some(2.5));
        assert_eq!(median(&mut []), None);
    }
}
