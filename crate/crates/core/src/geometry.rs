//! Smooth closed planar curves given by 2π-periodic parameterizations.
//!
//! All curves are oriented counterclockwise, so the outward normal is
//! `(y', −x') / |x'|`.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

#[allow(unused_imports)] // inherent when std is in the dependency graph
use num_traits::Float;
use thiserror::Error;

pub type Point = [f64; 2];

/// Smallest admissible speed `|x'(t)|`.
pub const JACOBIAN_MIN: f64 = 1e-10;

/// Resolution of the polygon used by [`Curve::contains`].
pub const CONTAINS_RESOLUTION: usize = 1024;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("invalid curve parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("degenerate parameterization: |x'(t)| = {speed:e} at t = {t}")]
    Degenerate { t: f64, speed: f64 },
    #[error("curve is self-intersecting (segments {0} and {1} cross)")]
    NotSimple(usize, usize),
    #[error("node count must be even and at least 4, got {0}")]
    NodeCount(usize),
}

/// Curve given by trigonometric-polynomial coefficients:
/// `x(t) = Σ_k cos_x[k] cos(kt) + sin_x[k] sin(kt)`, likewise for `y`.
/// `sin_*[0]` multiplies `sin(0) = 0` and is ignored.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigCurve {
    cos_x: Vec<f64>,
    sin_x: Vec<f64>,
    cos_y: Vec<f64>,
    sin_y: Vec<f64>,
}

impl TrigCurve {
    /// Builds the curve and reverses it (`t ↦ −t`) if its signed area is
    /// negative, so the stored parameterization is always counterclockwise.
    pub fn new(cos_x: Vec<f64>, sin_x: Vec<f64>, cos_y: Vec<f64>, sin_y: Vec<f64>) -> Result<Self, GeometryError> {
        let all = [&cos_x, &sin_x, &cos_y, &sin_y];
        if all.iter().all(|v| v.is_empty()) {
            return Err(GeometryError::InvalidParameter("custom curve has no coefficients"));
        }
        if all.iter().any(|v| v.iter().any(|c| !c.is_finite())) {
            return Err(GeometryError::InvalidParameter("custom curve coefficient is not finite"));
        }
        let mut curve = Self { cos_x, sin_x, cos_y, sin_y };
        let area = Curve::Custom(curve.clone()).signed_area(512);
        if area.abs() < 1e-12 {
            return Err(GeometryError::InvalidParameter("custom curve encloses no area"));
        }
        if area < 0.0 {
            curve.sin_x.iter_mut().for_each(|c| *c = -*c);
            curve.sin_y.iter_mut().for_each(|c| *c = -*c);
        }
        Ok(curve)
    }

    pub fn cos_x(&self) -> &[f64] {
        &self.cos_x
    }
    pub fn sin_x(&self) -> &[f64] {
        &self.sin_x
    }
    pub fn cos_y(&self) -> &[f64] {
        &self.cos_y
    }
    pub fn sin_y(&self) -> &[f64] {
        &self.sin_y
    }

    /// `d^order/dt^order` of one coordinate.
    fn coordinate(cos: &[f64], sin: &[f64], t: f64, order: u32) -> f64 {
        let len = cos.len().max(sin.len());
        let mut acc = 0.0;
        for k in 0..len {
            let a = cos.get(k).copied().unwrap_or(0.0);
            let b = if k == 0 { 0.0 } else { sin.get(k).copied().unwrap_or(0.0) };
            if a == 0.0 && b == 0.0 {
                continue;
            }
            let kf = k as f64;
            let (s, c) = (kf * t).sin_cos();
            // derivatives of (a cos + b sin) cycle with period 4
            let (dc, ds) = match order % 4 {
                0 => (c, s),
                1 => (-s, c),
                2 => (-c, -s),
                _ => (s, -c),
            };
            acc += kf.powi(order as i32) * (a * dc + b * ds);
        }
        acc
    }

    fn eval_order(&self, t: f64, order: u32) -> Point {
        [
            Self::coordinate(&self.cos_x, &self.sin_x, t, order),
            Self::coordinate(&self.cos_y, &self.sin_y, t, order),
        ]
    }
}

/// Closed boundary curve.
#[derive(Debug, Clone, PartialEq)]
pub enum Curve {
    Circle { radius: f64 },
    /// Semi-axes `a` along x and `b` along y.
    Ellipse { a: f64, b: f64 },
    /// `(cos t + 0.65 cos 2t, 1.5 sin t)`.
    Kite,
    Custom(TrigCurve),
}

impl Curve {
    pub fn circle(radius: f64) -> Result<Self, GeometryError> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(GeometryError::InvalidParameter("circle radius must be positive"));
        }
        Ok(Curve::Circle { radius })
    }

    pub fn ellipse(a: f64, b: f64) -> Result<Self, GeometryError> {
        if !(a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0) {
            return Err(GeometryError::InvalidParameter("ellipse semi-axes must be positive"));
        }
        Ok(Curve::Ellipse { a, b })
    }

    pub fn eval(&self, t: f64) -> Point {
        self.eval_order(t, 0)
    }

    pub fn derivative(&self, t: f64) -> Point {
        self.eval_order(t, 1)
    }

    pub fn second_derivative(&self, t: f64) -> Point {
        self.eval_order(t, 2)
    }

    fn eval_order(&self, t: f64, order: u32) -> Point {
        let t = num_traits::Euclid::rem_euclid(&t, &TAU);
        let (s, c) = t.sin_cos();
        match self {
            Curve::Circle { radius } => {
                let [cx, sy] = rotate_quarter(c, s, order);
                [radius * cx, radius * sy]
            }
            Curve::Ellipse { a, b } => {
                let [cx, sy] = rotate_quarter(c, s, order);
                [a * cx, b * sy]
            }
            Curve::Kite => {
                let [c1, s1] = rotate_quarter(c, s, order);
                let (s2, c2) = (2.0 * t).sin_cos();
                let [c2d, _] = rotate_quarter(c2, s2, order);
                let scale2 = 2f64.powi(order as i32);
                [c1 + 0.65 * scale2 * c2d, 1.5 * s1]
            }
            Curve::Custom(tc) => tc.eval_order(t, order),
        }
    }

    /// Unit outward normal `(y', −x') / |x'|`.
    pub fn outward_normal(&self, t: f64) -> Result<Point, GeometryError> {
        let [dx, dy] = self.derivative(t);
        let speed = dx.hypot(dy);
        if speed < JACOBIAN_MIN {
            return Err(GeometryError::Degenerate { t, speed });
        }
        Ok([dy / speed, -dx / speed])
    }

    /// `m` uniformly spaced samples `x(2πi/m)`.
    pub fn polygon(&self, m: usize) -> Vec<Point> {
        (0..m).map(|i| self.eval(TAU * i as f64 / m as f64)).collect()
    }

    /// Signed area by the shoelace formula on `m` samples; positive for a
    /// counterclockwise curve.
    pub fn signed_area(&self, m: usize) -> f64 {
        let p = self.polygon(m);
        0.5 * (0..m)
            .map(|i| {
                let a = p[i];
                let b = p[(i + 1) % m];
                a[0] * b[1] - b[0] * a[1]
            })
            .sum::<f64>()
    }

    /// Winding-number containment test on a polygon with
    /// [`CONTAINS_RESOLUTION`] vertices. Unspecified for points within
    /// `1e-9` of the curve.
    pub fn contains(&self, z: Point) -> bool {
        winding_number(&self.polygon(CONTAINS_RESOLUTION), z) != 0
    }

    /// Distance from `z` to the polygon with `m` vertices approximating the
    /// curve.
    pub fn distance_to(&self, z: Point, m: usize) -> f64 {
        let p = self.polygon(m);
        (0..m)
            .map(|i| segment_distance(p[i], p[(i + 1) % m], z))
            .fold(f64::INFINITY, f64::min)
    }

    /// Checks regularity on `m` samples and simplicity of the `m`-gon.
    pub fn validate(&self, m: usize) -> Result<(), GeometryError> {
        for i in 0..m {
            let t = TAU * i as f64 / m as f64;
            self.outward_normal(t)?;
        }
        let p = self.polygon(m);
        for i in 0..m {
            for j in i + 2..m {
                if i == 0 && j == m - 1 {
                    continue;
                }
                if segments_cross(p[i], p[(i + 1) % m], p[j], p[(j + 1) % m]) {
                    return Err(GeometryError::NotSimple(i, j));
                }
            }
        }
        Ok(())
    }
}

/// `d^order/dt^order (cos t, sin t)` given `(cos t, sin t)`.
fn rotate_quarter(c: f64, s: f64, order: u32) -> [f64; 2] {
    match order % 4 {
        0 => [c, s],
        1 => [-s, c],
        2 => [-c, -s],
        _ => [s, -c],
    }
}

fn winding_number(poly: &[Point], z: Point) -> i32 {
    let n = poly.len();
    let mut wn = 0;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let cross = (b[0] - a[0]) * (z[1] - a[1]) - (z[0] - a[0]) * (b[1] - a[1]);
        if a[1] <= z[1] {
            if b[1] > z[1] && cross > 0.0 {
                wn += 1;
            }
        } else if b[1] <= z[1] && cross < 0.0 {
            wn -= 1;
        }
    }
    wn
}

fn segment_distance(a: Point, b: Point, z: Point) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    let s = if len2 > 0.0 {
        (((z[0] - a[0]) * d[0] + (z[1] - a[1]) * d[1]) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (z[0] - a[0] - s * d[0]).hypot(z[1] - a[1] - s * d[1])
}

fn segments_cross(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
    let orient = |a: Point, b: Point, c: Point| (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    (d1 * d2 < 0.0) && (d3 * d4 < 0.0)
}

/// A curve sampled at `t_i = 2πi/m` with cached geometric quantities.
#[derive(Debug, Clone)]
pub struct CurveGrid {
    curve: Curve,
    pub params: Vec<f64>,
    pub points: Vec<Point>,
    pub tangents: Vec<Point>,
    pub second: Vec<Point>,
    /// Speeds `|x'(t_i)|`.
    pub jacobians: Vec<f64>,
    /// Unit outward normals.
    pub normals: Vec<Point>,
}

impl CurveGrid {
    pub fn new(curve: &Curve, m: usize) -> Result<Self, GeometryError> {
        if m < 4 || m % 2 != 0 {
            return Err(GeometryError::NodeCount(m));
        }
        let params: Vec<f64> = (0..m).map(|i| TAU * i as f64 / m as f64).collect();
        let mut points = Vec::with_capacity(m);
        let mut tangents = Vec::with_capacity(m);
        let mut second = Vec::with_capacity(m);
        let mut jacobians = Vec::with_capacity(m);
        let mut normals = Vec::with_capacity(m);
        for &t in &params {
            points.push(curve.eval(t));
            let d = curve.derivative(t);
            tangents.push(d);
            second.push(curve.second_derivative(t));
            let speed = d[0].hypot(d[1]);
            if speed < JACOBIAN_MIN {
                return Err(GeometryError::Degenerate { t, speed });
            }
            jacobians.push(speed);
            normals.push([d[1] / speed, -d[0] / speed]);
        }
        Ok(Self { curve: curve.clone(), params, points, tangents, second, jacobians, normals })
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    /// Uniform trapezoidal weight `2π/m`.
    pub fn step(&self) -> f64 {
        TAU / self.len() as f64
    }

    /// Curve length by the trapezoidal rule (spectrally accurate).
    pub fn length(&self) -> f64 {
        self.step() * self.jacobians.iter().sum::<f64>()
    }
}

/// `2π` divided by the wavelength, kept here so sampling rules can be phrased
/// in nodes per wavelength.
pub fn nodes_per_wavelength(grid: &CurveGrid, k: f64) -> f64 {
    let wavelength = 2.0 * PI / k;
    grid.len() as f64 * wavelength / grid.length()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use core::f64::consts::FRAC_PI_2;

    fn close(a: Point, b: Point, tol: f64) -> bool {
        (a[0] - b[0]).abs() <= tol && (a[1] - b[1]).abs() <= tol
    }

    #[test]
    fn builtin_points() {
        assert!(close(Curve::Kite.eval(0.0), [1.65, 0.0], 1e-15));
        assert!(close(Curve::circle(1.0).unwrap().eval(FRAC_PI_2), [0.0, 1.0], 1e-15));
        assert!(close(Curve::ellipse(2.0, 1.0).unwrap().eval(PI), [-2.0, 0.0], 1e-15));
    }

    #[test]
    fn builtin_normals() {
        let n = Curve::circle(2.0).unwrap().outward_normal(0.0).unwrap();
        assert!(close(n, [1.0, 0.0], 1e-15));
        let n = Curve::ellipse(2.0, 1.0).unwrap().outward_normal(FRAC_PI_2).unwrap();
        assert!(close(n, [0.0, 1.0], 1e-15));
        for i in 0..37 {
            let t = 0.17 * i as f64;
            let n = Curve::Kite.outward_normal(t).unwrap();
            let d = Curve::Kite.derivative(t);
            assert!((n[0] * d[0] + n[1] * d[1]).abs() < 1e-14);
            assert!((n[0].hypot(n[1]) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let h = 1e-5;
        for curve in [Curve::Kite, Curve::ellipse(2.0, 1.0).unwrap()] {
            for i in 0..10 {
                let t = 0.6 * i as f64;
                let a = curve.eval(t - h);
                let b = curve.eval(t + h);
                let d = curve.derivative(t);
                assert!(close(d, [(b[0] - a[0]) / (2.0 * h), (b[1] - a[1]) / (2.0 * h)], 1e-8));
                let a = curve.derivative(t - h);
                let b = curve.derivative(t + h);
                let d = curve.second_derivative(t);
                assert!(close(d, [(b[0] - a[0]) / (2.0 * h), (b[1] - a[1]) / (2.0 * h)], 1e-8));
            }
        }
    }

    #[test]
    fn kite_is_counterclockwise_and_simple() {
        assert!(Curve::Kite.signed_area(1024) > 0.0);
        Curve::Kite.validate(256).unwrap();
    }

    #[test]
    fn circle_containment() {
        let c = Curve::circle(1.0).unwrap();
        assert!(c.contains([0.0, 0.0]));
        assert!(!c.contains([2.0, 0.0]));
    }

    #[test]
    fn custom_curve_orientation_is_normalized() {
        // clockwise unit circle: x = cos t, y = -sin t
        let cw = TrigCurve::new(vec![0.0, 1.0], vec![], vec![], vec![0.0, -1.0]).unwrap();
        let c = Curve::Custom(cw);
        assert!(c.signed_area(256) > 0.0);
        let n = c.outward_normal(0.3).unwrap();
        let p = c.eval(0.3);
        assert!((n[0] * p[0] + n[1] * p[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn custom_matches_kite_coefficients() {
        let tc = TrigCurve::new(vec![0.0, 1.0, 0.65], vec![], vec![], vec![0.0, 1.5]).unwrap();
        let c = Curve::Custom(tc);
        for i in 0..20 {
            let t = 0.31 * i as f64;
            assert!(close(c.eval(t), Curve::Kite.eval(t), 1e-14));
            assert!(close(c.derivative(t), Curve::Kite.derivative(t), 1e-14));
            assert!(close(c.second_derivative(t), Curve::Kite.second_derivative(t), 1e-13));
        }
    }

    #[test]
    fn invalid_curves_are_rejected() {
        assert!(Curve::circle(-1.0).is_err());
        assert!(Curve::ellipse(1.0, 0.0).is_err());
        assert!(TrigCurve::new(vec![], vec![], vec![], vec![]).is_err());
        // a figure eight crosses itself
        let eight = TrigCurve::new(vec![0.0, 1.0], vec![], vec![], vec![0.0, 0.0, 0.5]);
        match eight {
            Ok(tc) => assert!(matches!(Curve::Custom(tc).validate(256), Err(GeometryError::NotSimple(..)))),
            Err(e) => assert!(matches!(e, GeometryError::InvalidParameter(_))),
        }
        assert!(matches!(CurveGrid::new(&Curve::Kite, 31), Err(GeometryError::NodeCount(31))));
    }

    #[test]
    fn grid_normals_are_orthonormal() {
        let g = CurveGrid::new(&Curve::Kite, 64).unwrap();
        for i in 0..g.len() {
            let n = g.normals[i];
            let d = g.tangents[i];
            assert!((n[0] * d[0] + n[1] * d[1]).abs() < 1e-12);
            assert!((n[0].hypot(n[1]) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn circle_grid_length() {
        let g = CurveGrid::new(&Curve::circle(1.5).unwrap(), 64).unwrap();
        assert!((g.length() - TAU * 1.5).abs() < 1e-12);
    }
}
