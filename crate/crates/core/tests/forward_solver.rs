//! Forward solver against the disk mode series, reciprocity and the energy
//! identity.

use std::f64::consts::PI;

use gibc_core::forward::{circle_series_oracle, min_circle_modes, solve_forward, solve_on_grid, FarFieldMatrix, ScatteringConfig};
use gibc_core::geometry::{Curve, CurveGrid};
use gibc_core::linalg::{hermitian_eig, ComplexMatrix};
use gibc_core::surface::ImpedanceParams;
use gibc_core::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn circle_error(m: usize) -> f64 {
    let imp = ImpedanceParams::constant(c(0.1, 0.0), c(0.0, 0.0)).unwrap();
    let grid = CurveGrid::new(&Curve::circle(1.0).unwrap(), m).unwrap();
    let u = solve_on_grid(&grid, &imp, 2.0, 50, 2.0).unwrap().far_field;
    let oracle = circle_series_oracle(1.0, 2.0, c(0.1, 0.0), c(0.0, 0.0), 50, 40).unwrap();
    u.relative_sup_distance(&oracle)
}

#[test]
fn circle_matches_mode_series() {
    // both grids already resolve every mode the data contains
    assert!(circle_error(64) < 1e-10);
    assert!(circle_error(128) < 1e-10);
}

#[test]
fn kite_converges_spectrally() {
    let imp = ImpedanceParams::constant(c(0.1, 0.0), c(0.0, 0.0)).unwrap();
    let solve = |m| {
        let grid = CurveGrid::new(&Curve::Kite, m).unwrap();
        solve_on_grid(&grid, &imp, 2.0, 16, 2.0).unwrap().far_field
    };
    let reference = solve(256);
    let errors: Vec<f64> = [32, 64, 96, 128].iter().map(|&m| solve(m).relative_sup_distance(&reference)).collect();
    assert!(errors[0] > 1e3 * errors[2], "{errors:?}");
    assert!(errors[2] < 1e-8, "{errors:?}");
}

#[test]
fn circle_with_absorption_and_negative_mu() {
    for (mu, lambda) in [(c(-0.3, -0.1), c(0.5, -0.5)), (c(0.0, 0.0), c(1.5, 0.0)), (c(0.2, 0.0), c(-0.7, -0.2))] {
        let imp = ImpedanceParams::constant(mu, lambda).unwrap();
        let cfg = ScatteringConfig::new(Curve::circle(1.3).unwrap(), imp, 2.5, 24, 128).unwrap();
        let u = solve_forward(&cfg).unwrap().far_field;
        let oracle = circle_series_oracle(1.3, 2.5, mu, lambda, 24, min_circle_modes(1.3, 2.5) + 10).unwrap();
        let e = u.relative_sup_distance(&oracle);
        assert!(e < 1e-8, "{e}");
    }
}

fn kite(mu: Complex64, lambda: Complex64, m: usize) -> FarFieldMatrix {
    let imp = ImpedanceParams::constant(mu, lambda).unwrap();
    let cfg = ScatteringConfig::new(Curve::Kite, imp, 2.0, 50, m).unwrap();
    solve_forward(&cfg).unwrap().far_field
}

#[test]
fn kite_reciprocity() {
    let u = kite(c(0.1, 0.0), c(0.0, 0.0), 192);
    let v = u.values();
    let n = 50;
    let mut d: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            d = d.max((v[(i, j)] - v[((j + 25) % n, (i + 25) % n)]).norm());
        }
    }
    assert!(d <= 1e-8 * v.max_abs());
}

/// `Im F̂ − F̂*F̂/(8π)` with `F̂ = (2π/n) U`.
fn energy_defect(u: &FarFieldMatrix) -> (ComplexMatrix, f64) {
    let n = u.n();
    let f = u.values().scale(c(2.0 * PI / n as f64, 0.0));
    let ff = f.adjoint().matmul(&f).unwrap().scale(c(1.0 / (8.0 * PI), 0.0));
    (&f.imaginary_part() - &ff, f.max_abs())
}

#[test]
fn energy_identity_real_impedance() {
    let circle = {
        let imp = ImpedanceParams::constant(c(0.1, 0.0), c(0.0, 0.0)).unwrap();
        solve_forward(&ScatteringConfig::new(Curve::circle(1.0).unwrap(), imp, 2.0, 50, 128).unwrap()).unwrap().far_field
    };
    for u in [circle, kite(c(0.1, 0.0), c(0.0, 0.0), 192)] {
        let (d, scale) = energy_defect(&u);
        assert!(d.max_abs() <= 1e-6 * scale);
    }
}

#[test]
fn absorbing_defect_is_positive_semidefinite() {
    let u = kite(c(0.1, 0.0), c(0.0, -0.5), 192);
    let (d, scale) = energy_defect(&u);
    let eig = hermitian_eig(&d.hermitian_part()).unwrap();
    let min = *eig.values.last().unwrap();
    assert!(min >= -1e-8 * scale);
}
