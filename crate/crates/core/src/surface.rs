//! Spectral differentiation on uniform periodic grids and the discrete
//! impedance operator `Z = div_Γ μ ∇_Γ − λ`.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;
#[allow(unused_imports)] // Float is inherent when std is in the dependency graph
use num_traits::Float;
use num_traits::Zero;
use thiserror::Error;

use crate::geometry::{CurveGrid, JACOBIAN_MIN};
use crate::linalg::ComplexMatrix;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurfaceError {
    #[error("{name} has positive imaginary part {value:e} at t = {t}")]
    ImaginaryPart { name: &'static str, t: f64, value: f64 },
    #[error("Re(mu) changes sign or vanishes at t = {t}; it must be uniformly positive or negative (or mu identically zero)")]
    MuSign { t: f64 },
    #[error("coefficient {0} is not finite")]
    NonFinite(&'static str),
    #[error("degenerate jacobian {0:e} on the grid")]
    Degenerate(f64),
}

/// Coefficient function on the curve, in the parameter `t`.
#[derive(Debug, Clone, PartialEq)]
pub enum Coefficient {
    Constant(Complex64),
    /// `Σ_k cos[k] cos(kt) + sin[k] sin(kt)` with complex coefficients.
    Trig { cos: Vec<Complex64>, sin: Vec<Complex64> },
}

impl Coefficient {
    pub fn value(&self, t: f64) -> Complex64 {
        match self {
            Coefficient::Constant(c) => *c,
            Coefficient::Trig { cos, sin } => {
                let len = cos.len().max(sin.len());
                (0..len)
                    .map(|k| {
                        let (s, c) = (k as f64 * t).sin_cos();
                        let a = cos.get(k).copied().unwrap_or_default();
                        let b = if k == 0 { Complex64::zero() } else { sin.get(k).copied().unwrap_or_default() };
                        a * c + b * s
                    })
                    .sum()
            }
        }
    }

    fn is_identically_zero(&self) -> bool {
        match self {
            Coefficient::Constant(c) => c.is_zero(),
            Coefficient::Trig { cos, sin } => {
                cos.iter().all(|c| c.is_zero()) && sin.iter().skip(1).all(|c| c.is_zero())
            }
        }
    }

    fn is_finite(&self) -> bool {
        let ok = |c: &Complex64| c.re.is_finite() && c.im.is_finite();
        match self {
            Coefficient::Constant(c) => ok(c),
            Coefficient::Trig { cos, sin } => cos.iter().chain(sin).all(ok),
        }
    }
}

impl From<Complex64> for Coefficient {
    fn from(c: Complex64) -> Self {
        Coefficient::Constant(c)
    }
}

impl From<f64> for Coefficient {
    fn from(c: f64) -> Self {
        Coefficient::Constant(Complex64::new(c, 0.0))
    }
}

/// Samples used to validate coefficient signs independently of any grid.
const VALIDATION_SAMPLES: usize = 256;

/// Coefficients `(μ, λ)` of the impedance operator.
///
/// Invariants, checked with zero tolerance: `Im μ <= 0`, `Im λ <= 0`, and
/// `Re μ` of one strict sign everywhere unless `μ ≡ 0` (plain Robin
/// impedance).
#[derive(Debug, Clone, PartialEq)]
pub struct ImpedanceParams {
    mu: Coefficient,
    lambda: Coefficient,
}

impl ImpedanceParams {
    pub fn new(mu: impl Into<Coefficient>, lambda: impl Into<Coefficient>) -> Result<Self, SurfaceError> {
        let params = Self { mu: mu.into(), lambda: lambda.into() };
        let ts: Vec<f64> = (0..VALIDATION_SAMPLES).map(|i| TAU * i as f64 / VALIDATION_SAMPLES as f64).collect();
        params.validate_at(&ts)?;
        Ok(params)
    }

    pub fn constant(mu: Complex64, lambda: Complex64) -> Result<Self, SurfaceError> {
        Self::new(mu, lambda)
    }

    pub fn mu(&self) -> &Coefficient {
        &self.mu
    }

    pub fn lambda(&self) -> &Coefficient {
        &self.lambda
    }

    /// Constant values `(μ, λ)`, if both coefficients are constant.
    pub fn as_constants(&self) -> Option<(Complex64, Complex64)> {
        match (&self.mu, &self.lambda) {
            (Coefficient::Constant(m), Coefficient::Constant(l)) => Some((*m, *l)),
            _ => None,
        }
    }

    /// True when both coefficients are real everywhere on `ts`.
    pub fn is_real_at(&self, ts: &[f64]) -> bool {
        ts.iter().all(|&t| self.mu.value(t).im == 0.0 && self.lambda.value(t).im == 0.0)
    }

    fn validate_at(&self, ts: &[f64]) -> Result<(), SurfaceError> {
        if !self.mu.is_finite() {
            return Err(SurfaceError::NonFinite("mu"));
        }
        if !self.lambda.is_finite() {
            return Err(SurfaceError::NonFinite("lambda"));
        }
        let mu_zero = self.mu.is_identically_zero();
        let mut sign = 0.0;
        for &t in ts {
            let mu = self.mu.value(t);
            let lambda = self.lambda.value(t);
            if mu.im > 0.0 {
                return Err(SurfaceError::ImaginaryPart { name: "mu", t, value: mu.im });
            }
            if lambda.im > 0.0 {
                return Err(SurfaceError::ImaginaryPart { name: "lambda", t, value: lambda.im });
            }
            if !mu_zero {
                if mu.re == 0.0 {
                    return Err(SurfaceError::MuSign { t });
                }
                let s = mu.re.signum();
                if sign == 0.0 {
                    sign = s;
                } else if s != sign {
                    return Err(SurfaceError::MuSign { t });
                }
            }
        }
        Ok(())
    }
}

/// Spectral differentiation matrix for `m` (even) uniform nodes on
/// `[0, 2π)`: `D_ij = ½ (−1)^(i−j) cot((i−j)π/m)`, zero diagonal. It
/// differentiates trigonometric polynomials of degree `< m/2` exactly and
/// maps the Nyquist mode to zero.
pub fn fourier_diff_matrix(m: usize) -> ComplexMatrix {
    assert!(m % 2 == 0 && m > 0, "spectral differentiation needs an even node count");
    let h = TAU / m as f64;
    let col: Vec<f64> = (0..m)
        .map(|d| {
            if d == 0 {
                0.0
            } else {
                let sign = if d % 2 == 0 { 1.0 } else { -1.0 };
                0.5 * sign / (0.5 * d as f64 * h).tan()
            }
        })
        .collect();
    ComplexMatrix::from_fn(m, m, |i, j| Complex64::new(col[(i + m - j) % m], 0.0))
}

/// Derivative `d/dt` of periodic samples on a uniform grid of even length.
pub fn fourier_diff(samples: &[Complex64]) -> Vec<Complex64> {
    fourier_diff_matrix(samples.len()).matvec(samples).expect("square matrix")
}

/// `Z` as a dense matrix acting on nodal values of a [`CurveGrid`].
#[derive(Debug, Clone)]
pub struct SurfaceOperatorMatrix {
    pub matrix: ComplexMatrix,
}

impl SurfaceOperatorMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, f: &[Complex64]) -> Vec<Complex64> {
        self.matrix.matvec(f).expect("vector length matches the grid")
    }
}

/// Assembles `(Zf)(t_i) = (1/J_i) D[ μ (1/J) D f ](t_i) − λ(t_i) f(t_i)`,
/// the arc-length form of `div_Γ μ ∇_Γ − λ` with `D` the spectral derivative.
pub fn assemble_impedance(grid: &CurveGrid, params: &ImpedanceParams) -> Result<SurfaceOperatorMatrix, SurfaceError> {
    params.validate_at(&grid.params)?;
    if let Some(&j) = grid.jacobians.iter().find(|&&j| j < JACOBIAN_MIN) {
        return Err(SurfaceError::Degenerate(j));
    }
    let m = grid.len();
    let d = fourier_diff_matrix(m);
    let mu_over_j: Vec<Complex64> = (0..m).map(|i| params.mu.value(grid.params[i]) / grid.jacobians[i]).collect();
    let mut matrix = if params.mu.is_identically_zero() {
        ComplexMatrix::zeros(m, m)
    } else {
        // rows of D scaled by μ/J, then left-multiplied by diag(1/J) D
        let inner = ComplexMatrix::from_fn(m, m, |i, j| mu_over_j[i] * d[(i, j)]);
        let outer = ComplexMatrix::from_fn(m, m, |i, j| d[(i, j)] / grid.jacobians[i]);
        &outer * &inner
    };
    for i in 0..m {
        matrix[(i, i)] -= params.lambda.value(grid.params[i]);
    }
    Ok(SurfaceOperatorMatrix { matrix })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Curve;
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn nodes(m: usize) -> Vec<f64> {
        (0..m).map(|i| TAU * i as f64 / m as f64).collect()
    }

    #[test]
    fn differentiates_sine() {
        let t = nodes(16);
        let f: Vec<Complex64> = t.iter().map(|&t| c(t.sin(), 0.0)).collect();
        let df = fourier_diff(&f);
        for (d, &t) in df.iter().zip(&t) {
            assert!((d - c(t.cos(), 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn constant_has_zero_derivative() {
        let df = fourier_diff(&[c(2.5, -1.0); 12]);
        assert!(df.iter().all(|d| d.norm() < 1e-13));
    }

    #[test]
    fn differentiates_exponential_mode() {
        let t = nodes(32);
        let f: Vec<Complex64> = t.iter().map(|&t| (c(0.0, 5.0 * t)).exp()).collect();
        let df = fourier_diff(&f);
        for (d, v) in df.iter().zip(&f) {
            assert!((d - c(0.0, 5.0) * v).norm() < 1e-12);
        }
    }

    #[test]
    fn nyquist_mode_is_annihilated() {
        let t = nodes(8);
        let f: Vec<Complex64> = t.iter().map(|&t| c((4.0 * t).cos(), 0.0)).collect();
        assert!(fourier_diff(&f).iter().all(|d| d.norm() < 1e-13));
    }

    fn apply_mode(grid: &CurveGrid, params: &ImpedanceParams, mode: f64) -> (Vec<Complex64>, Vec<Complex64>) {
        let z = assemble_impedance(grid, params).unwrap();
        let f: Vec<Complex64> = grid.params.iter().map(|&t| c(0.0, mode * t).exp()).collect();
        (z.apply(&f), f)
    }

    #[test]
    fn laplace_beltrami_on_unit_circle() {
        let grid = CurveGrid::new(&Curve::circle(1.0).unwrap(), 32).unwrap();
        let p = ImpedanceParams::new(1.0, 0.0).unwrap();
        let (zf, f) = apply_mode(&grid, &p, 2.0);
        for (a, b) in zf.iter().zip(&f) {
            assert!((a + 4.0 * b).norm() < 1e-10);
        }
    }

    #[test]
    fn pure_robin_term() {
        let grid = CurveGrid::new(&Curve::Kite, 32).unwrap();
        let p = ImpedanceParams::new(0.0, 3.0).unwrap();
        let z = assemble_impedance(&grid, &p).unwrap();
        let f: Vec<Complex64> = (0..32).map(|i| c(i as f64, 1.0 - i as f64)).collect();
        for (a, b) in z.apply(&f).iter().zip(&f) {
            assert_eq!(*a, -3.0 * b);
        }
    }

    #[test]
    fn circle_radius_two_mode_one() {
        let grid = CurveGrid::new(&Curve::circle(2.0).unwrap(), 32).unwrap();
        let p = ImpedanceParams::new(0.1, 0.5).unwrap();
        let (zf, f) = apply_mode(&grid, &p, 1.0);
        for (a, b) in zf.iter().zip(&f) {
            assert!((a + 0.525 * b).norm() < 1e-10);
        }
    }

    #[test]
    fn circle_diagonalization_all_modes() {
        let (r, mu, lambda) = (1.5, c(0.3, -0.1), c(0.7, -0.2));
        let m = 40;
        let grid = CurveGrid::new(&Curve::circle(r).unwrap(), m).unwrap();
        let p = ImpedanceParams::new(mu, lambda).unwrap();
        for mode in -(m as i32 / 2 - 1)..(m as i32 / 2) {
            let (zf, f) = apply_mode(&grid, &p, mode as f64);
            let symbol = -mu * (mode * mode) as f64 / (r * r) - lambda;
            for (a, b) in zf.iter().zip(&f) {
                assert!((a - symbol * b).norm() < 1e-10 * (1.0 + symbol.norm()), "mode {mode}");
            }
        }
    }

    #[test]
    fn sign_validation() {
        assert!(matches!(
            ImpedanceParams::new(c(0.1, 0.1), 0.0),
            Err(SurfaceError::ImaginaryPart { name: "mu", .. })
        ));
        assert!(matches!(
            ImpedanceParams::new(0.1, c(0.0, 1e-3)),
            Err(SurfaceError::ImaginaryPart { name: "lambda", .. })
        ));
        // Re(mu) = cos t changes sign
        let mu = Coefficient::Trig { cos: vec![c(0.0, 0.0), c(1.0, 0.0)], sin: vec![] };
        assert!(matches!(ImpedanceParams::new(mu, 0.0), Err(SurfaceError::MuSign { .. })));
        // uniformly negative is fine
        assert!(ImpedanceParams::new(-2.0, 0.0).is_ok());
        assert!(ImpedanceParams::new(c(0.0, -1.0), 0.0).is_err());
        assert!(ImpedanceParams::new(f64::NAN, 0.0).is_err());
    }
}
