//! Nyström boundary operators on a circle against their Fourier symbols.

use std::f64::consts::PI;

use gibc_core::geometry::{Curve, CurveGrid};
use gibc_core::linalg::ComplexMatrix;
use gibc_core::potentials::assemble_operators;
use gibc_core::special::{bessel_j, bessel_j_derivative, hankel1, hankel1_derivative};
use gibc_core::{Complex64, I};

struct Symbols {
    single: Complex64,
    double: Complex64,
    hypersingular: Complex64,
}

fn symbols(radius: f64, k: f64, mode: u32) -> Symbols {
    let x = k * radius;
    let j = bessel_j(mode, x).unwrap();
    let jd = bessel_j_derivative(mode, x).unwrap();
    let h = hankel1(mode, x).unwrap();
    let hd = hankel1_derivative(mode, x).unwrap();
    let a = I * PI * radius / 2.0;
    let b = I * PI * k * radius / 2.0;
    Symbols { single: a * j * h, double: b * j * hd + 0.5, hypersingular: b * k * jd * hd }
}

fn mode_vector(m: usize, mode: i32) -> Vec<Complex64> {
    (0..m).map(|i| (I * (mode as f64) * 2.0 * PI * i as f64 / m as f64).exp()).collect()
}

fn symbol_error(op: &ComplexMatrix, v: &[Complex64], sym: Complex64) -> f64 {
    let w = op.matvec(v).unwrap();
    w.iter().zip(v).map(|(a, b)| (a - sym * b).norm()).fold(0.0, f64::max)
}

fn max_error(radius: f64, k: f64, m: usize, modes: u32) -> f64 {
    let grid = CurveGrid::new(&Curve::circle(radius).unwrap(), m).unwrap();
    let ops = assemble_operators(&grid, k).unwrap();
    let mut err: f64 = 0.0;
    for mode in 0..=modes {
        let s = symbols(radius, k, mode);
        for sign in [1, -1] {
            let v = mode_vector(m, sign * mode as i32);
            let scale = s.single.norm().max(s.double.norm()).max(s.hypersingular.norm()).max(1.0);
            err = err.max(symbol_error(&ops.single, &v, s.single) / scale);
            err = err.max(symbol_error(&ops.double, &v, s.double) / scale);
            err = err.max(symbol_error(&ops.adjoint_double, &v, s.double) / scale);
            err = err.max(symbol_error(&ops.hypersingular, &v, s.hypersingular) / scale);
        }
    }
    err
}

#[test]
fn symbols_match_on_unit_circle() {
    for m in [64, 128] {
        let e = max_error(1.0, 2.0, m, 10);
        assert!(e < 1e-10, "m = {m}: {e}");
    }
}

#[test]
fn symbols_match_at_larger_radius() {
    let e = max_error(2.0, 3.0, 128, 12);
    assert!(e < 1e-10, "{e}");
}
