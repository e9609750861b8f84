//! Nyström matrices of the Helmholtz boundary integral operators on a smooth
//! closed curve, and the far-field kernels of the layer potentials.
//!
//! With `Φ(x, y) = (i/4) H_0^(1)(k|x − y|)` and `ν` the outward normal:
//!
//! * `S φ(x)  = ∫ Φ(x, y) φ(y) ds(y)`
//! * `K φ(x)  = ∫ ∂Φ(x, y)/∂ν(y) φ(y) ds(y)`
//! * `K' φ(x) = ∫ ∂Φ(x, y)/∂ν(x) φ(y) ds(y)`
//! * `T φ(x)  = ∂/∂ν(x) ∫ ∂Φ(x, y)/∂ν(y) φ(y) ds(y)`
//!
//! Exterior traces of the layer potentials: `γ0⁺ D = K + I/2`,
//! `γ0 S = S`, `γ1⁺ S = K' − I/2`, `γ1 D = T`.
//!
//! Each weakly singular kernel is split as
//! `A1(t, τ) ln(4 sin²((t − τ)/2)) + A2(t, τ)` with `A1`, `A2` analytic; the
//! log part is integrated with the trigonometric product weights `R_j(t)`
//! and the smooth part with the trapezoidal rule. `T` is never discretized
//! directly: it comes from the Maue identity
//! `T φ = d/ds S (dφ/ds) + k² ν·S(ν φ)`.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;
#[allow(unused_imports)] // inherent when std is in the dependency graph
use num_traits::Float;
use thiserror::Error;

use crate::geometry::{nodes_per_wavelength, CurveGrid, Point};
use crate::linalg::ComplexMatrix;
use crate::special::{cylinder_01, EULER_GAMMA};
use crate::surface::fourier_diff_matrix;
use crate::I;

/// Minimum quadrature node count.
pub const MIN_NODES: usize = 32;

/// Below this many nodes per wavelength the discretization is rejected.
pub const MIN_NODES_PER_WAVELENGTH: f64 = 6.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PotentialError {
    #[error("grid too coarse: {0}")]
    Sampling(alloc::string::String),
    #[error("wavenumber must be positive and finite, got {0}")]
    Wavenumber(f64),
    #[error("non-finite value while assembling {0}")]
    Assembly(&'static str),
}

/// The four boundary operators on one grid at one wavenumber.
#[derive(Debug, Clone)]
pub struct BoundaryOperators {
    pub k: f64,
    /// `S`
    pub single: ComplexMatrix,
    /// `K`
    pub double: ComplexMatrix,
    /// `K'`
    pub adjoint_double: ComplexMatrix,
    /// `T`, the hypersingular operator.
    pub hypersingular: ComplexMatrix,
}

/// Log-kernel quadrature weights `R[d] = R_j(t_i)` for `d = (i − j) mod m`:
/// `R_j(t) = −(2π/N) Σ_{l=1}^{N−1} cos(l(t − t_j))/l − (π/N²) cos(N(t − t_j))`
/// with `m = 2N` nodes.
pub fn log_weights(m: usize) -> Vec<f64> {
    let n = m / 2;
    let nf = n as f64;
    (0..m)
        .map(|d| {
            let s: f64 = (1..n).map(|l| ((l * d) as f64 * PI / nf).cos() / l as f64).sum();
            let alt = if d % 2 == 0 { 1.0 } else { -1.0 };
            -TAU / nf * s - PI / (nf * nf) * alt
        })
        .collect()
}

/// Checks node count and resolution of `grid` for wavenumber `k`; returns
/// the number of nodes per wavelength.
pub fn check_sampling(grid: &CurveGrid, k: f64) -> Result<f64, PotentialError> {
    if !(k.is_finite() && k > 0.0) {
        return Err(PotentialError::Wavenumber(k));
    }
    let m = grid.len();
    if m < MIN_NODES || m % 2 != 0 {
        return Err(PotentialError::Sampling(alloc::format!(
            "need an even node count of at least {MIN_NODES}, got {m}"
        )));
    }
    let ppw = nodes_per_wavelength(grid, k);
    if ppw < MIN_NODES_PER_WAVELENGTH {
        return Err(PotentialError::Sampling(alloc::format!(
            "{ppw:.2} nodes per wavelength at k = {k}, need at least {MIN_NODES_PER_WAVELENGTH}"
        )));
    }
    Ok(ppw)
}

fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

/// Assembles `S`, `K`, `K'` and `T` on `grid` at wavenumber `k`.
pub fn assemble_operators(grid: &CurveGrid, k: f64) -> Result<BoundaryOperators, PotentialError> {
    check_sampling(grid, k)?;
    let m = grid.len();
    let weights = log_weights(m);
    let h = grid.step();
    let inv4pi = 1.0 / (4.0 * PI);

    let mut single = ComplexMatrix::zeros(m, m);
    let mut single_nu = ComplexMatrix::zeros(m, m);
    let mut double = ComplexMatrix::zeros(m, m);
    let mut adjoint = ComplexMatrix::zeros(m, m);

    for i in 0..m {
        let xi = grid.points[i];
        let nu_i = grid.normals[i];
        let ji = grid.jacobians[i];

        // diagonal limits
        let a1 = -inv4pi * ji;
        let a2 = ji * (0.25 * I - EULER_GAMMA / TAU - (0.5 * k * ji).ln() / TAU);
        let diag_s = weights[0] * a1 + h * a2;
        single[(i, i)] = diag_s;
        single_nu[(i, i)] = diag_s;
        let curvature_term = dot(nu_i, grid.second[i]) * inv4pi / ji;
        double[(i, i)] = Complex64::new(h * curvature_term, 0.0);
        adjoint[(i, i)] = Complex64::new(h * curvature_term, 0.0);

        for j in i + 1..m {
            let xj = grid.points[j];
            let nu_j = grid.normals[j];
            let jj = grid.jacobians[j];
            let d = [xi[0] - xj[0], xi[1] - xj[1]];
            let r = d[0].hypot(d[1]);
            let (j0, j1, y0, y1) = cylinder_01(k * r);
            let h0 = Complex64::new(j0, y0);
            let h1 = Complex64::new(j1, y1);
            let half = 0.5 * (grid.params[i] - grid.params[j]);
            let log = (4.0 * half.sin().powi(2)).ln();
            // R[d] = R[m - d], so one weight serves both (i, j) and (j, i)
            let w = weights[(i + m - j) % m];

            // S and S_ν: symmetric kernel, weight by the integration variable's jacobian
            let g_kernel = 0.25 * I * h0;
            let g_a1 = -inv4pi * j0;
            let g_a2 = g_kernel - g_a1 * log;
            let nn = dot(nu_i, nu_j);
            single[(i, j)] = (w * g_a1 + h * g_a2) * jj;
            single[(j, i)] = (w * g_a1 + h * g_a2) * ji;
            single_nu[(i, j)] = single[(i, j)] * nn;
            single_nu[(j, i)] = single[(j, i)] * nn;

            // ∂Φ(x,y)/∂ν(y) = (ik/4) H1(kr) ν(y)·(x−y)/r
            let dl = |nu_y: Point, dvec: Point, jac_y: f64| {
                let proj = dot(nu_y, dvec) / r;
                let kernel = 0.25 * I * k * h1 * proj * jac_y;
                let a1 = -inv4pi * k * j1 * proj * jac_y;
                (a1, kernel - a1 * log)
            };
            // ∂Φ(x,y)/∂ν(x) = −(ik/4) H1(kr) ν(x)·(x−y)/r
            let adl = |nu_x: Point, dvec: Point, jac_y: f64| {
                let proj = dot(nu_x, dvec) / r;
                let kernel = -0.25 * I * k * h1 * proj * jac_y;
                let a1 = inv4pi * k * j1 * proj * jac_y;
                (a1, kernel - a1 * log)
            };
            let neg = [-d[0], -d[1]];
            let (a1, a2) = dl(nu_j, d, jj);
            double[(i, j)] = w * a1 + h * a2;
            let (a1, a2) = dl(nu_i, neg, ji);
            double[(j, i)] = w * a1 + h * a2;
            let (a1, a2) = adl(nu_i, d, jj);
            adjoint[(i, j)] = w * a1 + h * a2;
            let (a1, a2) = adl(nu_j, neg, ji);
            adjoint[(j, i)] = w * a1 + h * a2;
        }
    }

    for (name, mat) in [("S", &single), ("K", &double), ("K'", &adjoint)] {
        if !mat.is_finite() {
            return Err(PotentialError::Assembly(name));
        }
    }

    // Maue: T = D_s S D_s + k² S_ν, D_s = diag(1/J) D
    let dm = fourier_diff_matrix(m);
    let ds = ComplexMatrix::from_fn(m, m, |i, j| dm[(i, j)] / grid.jacobians[i]);
    let hypersingular = &(&(&ds * &single) * &ds) + &single_nu.scale(Complex64::new(k * k, 0.0));
    if !hypersingular.is_finite() {
        return Err(PotentialError::Assembly("T"));
    }

    Ok(BoundaryOperators { k, single, double, adjoint_double: adjoint, hypersingular })
}

/// Uniform directions `x̂_i = (cos 2πi/n, sin 2πi/n)`, `i = 0..n`.
pub fn directions(n: usize) -> Vec<Point> {
    (0..n)
        .map(|i| {
            let a = TAU * i as f64 / n as f64;
            [a.cos(), a.sin()]
        })
        .collect()
}

/// Far-field kernels on `n` uniform directions.
///
/// The far field is normalized by `u_s(x) = u∞(x̂) γ e^{ik|x|}/√|x| (1 + O(1/|x|))`
/// with `γ = e^{iπ/4}/√(8πk)`; under this convention the far field of
/// `Φ(·, z)` is exactly `e^{−ik x̂·z}`.
#[derive(Debug, Clone)]
pub struct FarFieldKernel {
    /// Far field of `S ψ`: entries `e^{−ik x̂_i·y_j} |x'_j| 2π/m`.
    pub single: ComplexMatrix,
    /// Far field of `D φ`: entries `−ik (x̂_i·ν_j) e^{−ik x̂_i·y_j} |x'_j| 2π/m`.
    pub double: ComplexMatrix,
}

pub fn far_field_matrices(grid: &CurveGrid, k: f64, n: usize) -> FarFieldKernel {
    let dirs = directions(n);
    let m = grid.len();
    let h = grid.step();
    let mut single = ComplexMatrix::zeros(n, m);
    let mut double = ComplexMatrix::zeros(n, m);
    for (i, &xh) in dirs.iter().enumerate() {
        for j in 0..m {
            let phase = (-I * k * dot(xh, grid.points[j])).exp();
            let w = grid.jacobians[j] * h;
            single[(i, j)] = phase * w;
            double[(i, j)] = -I * k * dot(xh, grid.normals[j]) * phase * w;
        }
    }
    FarFieldKernel { single, double }
}

/// `γ(2) = e^{iπ/4}/√(8πk)`, the two-dimensional far-field normalization.
pub fn far_field_constant(k: f64) -> Complex64 {
    Complex64::from_polar(1.0 / (8.0 * PI * k).sqrt(), PI / 4.0)
}

/// Green's function `Φ(x, y) = (i/4) H_0^(1)(k|x − y|)`.
pub fn green(k: f64, x: Point, y: Point) -> Complex64 {
    let r = (x[0] - y[0]).hypot(x[1] - y[1]);
    let (j0, _, y0, _) = cylinder_01(k * r);
    0.25 * I * Complex64::new(j0, y0)
}

/// `∇_x Φ(x, y)`.
pub fn green_gradient(k: f64, x: Point, y: Point) -> [Complex64; 2] {
    let d = [x[0] - y[0], x[1] - y[1]];
    let r = d[0].hypot(d[1]);
    let (_, j1, _, y1) = cylinder_01(k * r);
    let f = -0.25 * I * k * Complex64::new(j1, y1) / r;
    [f * d[0], f * d[1]]
}

/// Values of `D φ + S ψ` at points away from the curve, by the trapezoidal rule (accurate only at distances that are
/// large compared with the node spacing).
pub fn evaluate_potential(grid: &CurveGrid, k: f64, double_density: &[Complex64], single_density: &[Complex64], x: Point) -> Complex64 {
    // an empty slice drops that term
    let h = grid.step();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..grid.len() {
        let y = grid.points[j];
        let w = grid.jacobians[j] * h;
        if !single_density.is_empty() {
            acc += green(k, x, y) * single_density[j] * w;
        }
        if !double_density.is_empty() {
            // ∂Φ/∂ν(y) = −ν(y)·∇_x Φ
            let g = green_gradient(k, x, y);
            let nu = grid.normals[j];
            acc -= (g[0] * nu[0] + g[1] * nu[1]) * double_density[j] * w;
        }
    }
    acc
}
