//! Small dense complex linear algebra: a row-major matrix type, LU with
//! partial pivoting, and a cyclic Jacobi eigensolver for Hermitian matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
#[allow(unused_imports)] // Float is inherent when std is in the dependency graph
use num_traits::Float;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Dimension(&'static str),
    #[error("matrix is singular: zero pivot at column {pivot}")]
    Singular { pivot: usize },
    #[error("matrix is not Hermitian: max |A - A*| = {defect:e} exceeds {tolerance:e}")]
    NotHermitian { defect: f64, tolerance: f64 },
    #[error("non-finite entry in matrix")]
    NonFinite,
}

/// Dense complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row-major storage.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Dimension("storage length differs from rows * cols"));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn column_vector(values: &[Complex64]) -> Self {
        Self { rows: values.len(), cols: 1, data: values.to_vec() }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, values: &[Complex64]) {
        for (i, &v) in values.iter().enumerate() {
            self[(i, j)] = v;
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&v| v * s).collect() }
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&v| f(v)).collect() }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Dimension("inner dimensions differ"));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, x: &[Complex64]) -> Result<Vec<Complex64>, LinalgError> {
        if self.cols != x.len() {
            return Err(LinalgError::Dimension("vector length differs from column count"));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(&a, &b)| a * b).sum())
            .collect())
    }

    /// `max |A − A*|`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                d = d.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        d
    }

    /// Hermitian part `(A + A*)/2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| 0.5 * (self[(i, j)] + self[(j, i)].conj()))
    }

    /// Skew part as a Hermitian matrix, `(A − A*)/(2i)`.
    pub fn imaginary_part(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] - self[(j, i)].conj()) / Complex64::new(0.0, 2.0)
        })
    }

    fn check_same_shape(&self, other: &Self) {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "matrix shapes differ: {}x{} vs {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: Self) -> ComplexMatrix {
        self.check_same_shape(rhs);
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: Self) -> ComplexMatrix {
        self.check_same_shape(rhs);
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Panics on inner-dimension mismatch; use [`ComplexMatrix::matmul`] for a
/// checked product.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: Self) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product dimensions")
    }
}

/// LU factorization `P A = L U` with partial pivoting.
#[derive(Debug, Clone)]
pub struct LuFactors {
    lu: ComplexMatrix,
    perm: Vec<usize>,
    min_pivot_ratio: f64,
}

impl LuFactors {
    pub fn new(a: &ComplexMatrix) -> Result<Self, LinalgError> {
        if !a.is_square() {
            return Err(LinalgError::Dimension("LU needs a square matrix"));
        }
        if !a.is_finite() {
            return Err(LinalgError::NonFinite);
        }
        let n = a.rows;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = a.max_abs();
        let mut min_pivot = f64::INFINITY;
        for col in 0..n {
            let (mut piv, mut best) = (col, lu[(col, col)].norm());
            for r in col + 1..n {
                let v = lu[(r, col)].norm();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best == 0.0 {
                return Err(LinalgError::Singular { pivot: col });
            }
            min_pivot = min_pivot.min(best);
            if piv != col {
                for j in 0..n {
                    lu.data.swap(col * n + j, piv * n + j);
                }
                perm.swap(col, piv);
            }
            let inv = lu[(col, col)].inv();
            for r in col + 1..n {
                let factor = lu[(r, col)] * inv;
                lu[(r, col)] = factor;
                if factor.is_zero() {
                    continue;
                }
                let (top, bottom) = lu.data.split_at_mut(r * n);
                let pivot_row = &top[col * n + col + 1..col * n + n];
                for (x, &p) in bottom[col + 1..n].iter_mut().zip(pivot_row) {
                    *x -= factor * p;
                }
            }
        }
        let min_pivot_ratio = if scale > 0.0 { min_pivot / scale } else { 0.0 };
        Ok(Self { lu, perm, min_pivot_ratio })
    }

    pub fn dim(&self) -> usize {
        self.lu.rows
    }

    /// Smallest pivot modulus divided by `max |A|`.
    pub fn min_pivot_ratio(&self) -> f64 {
        self.min_pivot_ratio
    }

    pub fn solve_vec(&self, b: &[Complex64]) -> Result<Vec<Complex64>, LinalgError> {
        let n = self.dim();
        if b.len() != n {
            return Err(LinalgError::Dimension("right-hand side length"));
        }
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let row = self.lu.row(i);
            let s: Complex64 = row[..i].iter().zip(&x[..i]).map(|(&l, &v)| l * v).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let row = self.lu.row(i);
            let s: Complex64 = row[i + 1..].iter().zip(&x[i + 1..]).map(|(&u, &v)| u * v).sum();
            x[i] = (x[i] - s) / row[i];
        }
        Ok(x)
    }

    /// Solves `A* x = b`.
    pub fn solve_adjoint_vec(&self, b: &[Complex64]) -> Result<Vec<Complex64>, LinalgError> {
        let n = self.dim();
        if b.len() != n {
            return Err(LinalgError::Dimension("right-hand side length"));
        }
        // A = Pᵀ L U, so A* = U* L* P; solve U* y = b, L* w = y, x = Pᵀ w.
        let mut y = b.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for (k, yk) in y.iter().enumerate().take(i) {
                s -= self.lu[(k, i)].conj() * yk;
            }
            y[i] = s / self.lu[(i, i)].conj();
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for (k, yk) in y.iter().enumerate().skip(i + 1) {
                s -= self.lu[(k, i)].conj() * yk;
            }
            y[i] = s;
        }
        let mut x = vec![Complex64::zero(); n];
        for (i, &p) in self.perm.iter().enumerate() {
            x[p] = y[i];
        }
        Ok(x)
    }

    pub fn solve(&self, b: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
        if b.rows != self.dim() {
            return Err(LinalgError::Dimension("right-hand side rows"));
        }
        let mut out = ComplexMatrix::zeros(b.rows, b.cols);
        for j in 0..b.cols {
            let x = self.solve_vec(&b.column(j))?;
            out.set_column(j, &x);
        }
        Ok(out)
    }

    /// Hager–Higham estimate of `‖A⁻¹‖₁`.
    pub fn inverse_norm1_estimate(&self) -> f64 {
        let n = self.dim();
        let mut x = vec![Complex64::new(1.0 / n as f64, 0.0); n];
        let mut estimate = 0.0;
        for _ in 0..5 {
            let Ok(y) = self.solve_vec(&x) else { return f64::INFINITY };
            let norm: f64 = y.iter().map(|v| v.norm()).sum();
            if norm <= estimate {
                break;
            }
            estimate = norm;
            let xi: Vec<Complex64> = y
                .iter()
                .map(|v| if v.norm() > 0.0 { v / v.norm() } else { Complex64::new(1.0, 0.0) })
                .collect();
            let Ok(z) = self.solve_adjoint_vec(&xi) else { return f64::INFINITY };
            let (jmax, zmax) = z
                .iter()
                .enumerate()
                .fold((0, 0.0), |acc, (j, v)| if v.re > acc.1 { (j, v.re) } else { acc });
            let ztx: f64 = z.iter().zip(&x).map(|(a, b)| (a.conj() * b).re).sum();
            if zmax <= ztx {
                break;
            }
            x = vec![Complex64::zero(); n];
            x[jmax] = Complex64::new(1.0, 0.0);
        }
        estimate
    }
}

/// Solves `A X = B` by LU with partial pivoting.
pub fn lu_solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    LuFactors::new(a)?.solve(b)
}

/// `‖A‖₁`, the maximum absolute column sum.
pub fn norm1(a: &ComplexMatrix) -> f64 {
    (0..a.cols).map(|j| (0..a.rows).map(|i| a[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// Eigendecomposition `A = V diag(values) V*` of a Hermitian matrix, values
/// sorted in descending order, eigenvectors stored as the columns of
/// `vectors`.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEig {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `V f(Λ) V*` for a real spectral function `f`.
    pub fn spectral_map(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.vectors;
        let fv: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| v[(i, k)] * fv[k] * v[(j, k)].conj()).sum()
        })
    }

    /// `max |V*V − I|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let g = &self.vectors.adjoint() * &self.vectors;
        (&g - &ComplexMatrix::identity(self.dim())).max_abs()
    }
}

/// Default Hermiticity tolerance relative to `max |A|`.
pub const HERMITIAN_TOLERANCE: f64 = 1e-8;

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
///
/// The input is symmetrized as `(A + A*)/2` first; a defect above
/// `1e-8·max|A|` is rejected.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<HermitianEig, LinalgError> {
    hermitian_eig_with_tolerance(a, HERMITIAN_TOLERANCE)
}

pub fn hermitian_eig_with_tolerance(a: &ComplexMatrix, rel_tol: f64) -> Result<HermitianEig, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::Dimension("eigendecomposition needs a square matrix"));
    }
    if !a.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    let scale = a.max_abs();
    let defect = a.hermitian_defect();
    let tolerance = rel_tol * scale;
    if defect > tolerance {
        return Err(LinalgError::NotHermitian { defect, tolerance });
    }
    let n = a.rows;
    let mut m = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);

    let fro = m.frobenius_norm();
    if fro == 0.0 {
        return Ok(HermitianEig { values: vec![0.0; n], vectors: v });
    }
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-17 * fro {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let r = apq.norm();
                if r <= 1e-20 * fro {
                    m[(p, q)] = Complex64::zero();
                    m[(q, p)] = Complex64::zero();
                    continue;
                }
                rotate(&mut m, &mut v, p, q, apq, r);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&x, &y| diag[y].total_cmp(&diag[x]));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(HermitianEig { values, vectors })
}

/// One unitary Jacobi rotation annihilating `m[(p, q)] = r e^{iφ}`.
///
/// The rotation is `U = diag(1, e^{-iφ}) R(θ)` restricted to the `(p, q)`
/// plane, with `R` the real rotation that diagonalizes
/// `[[a_pp, r], [r, a_qq]]`.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, apq: Complex64, r: f64) {
    let n = m.rows;
    let phase = apq / r; // e^{iφ}
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let pc = phase.conj();
    // columns: A <- A U
    for k in 0..n {
        let akp = m[(k, p)];
        let akq = m[(k, q)];
        m[(k, p)] = c * akp - s * pc * akq;
        m[(k, q)] = s * akp + c * pc * akq;
    }
    // rows: A <- U* A
    for k in 0..n {
        let apk = m[(p, k)];
        let aqk = m[(q, k)];
        m[(p, k)] = c * apk - s * phase * aqk;
        m[(q, k)] = s * apk + c * phase * aqk;
    }
    m[(p, q)] = Complex64::zero();
    m[(q, p)] = Complex64::zero();
    m[(p, p)] = Complex64::new(app - t * r, 0.0);
    m[(q, q)] = Complex64::new(aqq + t * r, 0.0);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * pc * vkq;
        v[(k, q)] = s * vkp + c * pc * vkq;
    }
}

/// Operator absolute value `|A| = Σ |λ_i| e_i e_i*` of a Hermitian matrix.
pub fn hermitian_abs(a: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    Ok(hermitian_eig(a)?.spectral_map(f64::abs))
}
