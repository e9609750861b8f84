//! Bessel functions: Wronskian and recurrence invariants and an independent
//! power-series oracle.

use std::f64::consts::PI;

use gibc_core::special::{bessel_j, bessel_j_derivative, bessel_y, hankel1, hankel1_derivative};

fn grid() -> impl Iterator<Item = f64> {
    // [0.1, 50] with points on both sides of every regime change
    (0..=499).map(|i| 0.1 + 49.9 * i as f64 / 499.0).chain([0.999, 1.001, 24.99, 25.01])
}

/// `Σ_k (−1)^k (x/2)^{2k+n} / (k! (k+n)!)` summed in extended steps.
fn series_j(n: u32, x: f64) -> f64 {
    let h = x / 2.0;
    let mut term = (1..=n).fold(1.0, |t, i| t * h / i as f64);
    let mut sum = term;
    for k in 1..200 {
        term *= -h * h / (k as f64 * (k + n) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

#[test]
fn wronskian_holds() {
    for x in grid() {
        for n in 0..30u32 {
            let w = bessel_j(n + 1, x).unwrap() * bessel_y(n, x).unwrap() - bessel_j(n, x).unwrap() * bessel_y(n + 1, x).unwrap();
            let exact = 2.0 / (PI * x);
            // Y grows like (2n/ex)^n for small x; measure against the size of the products
            let scale = (bessel_j(n + 1, x).unwrap() * bessel_y(n, x).unwrap()).abs().max(exact);
            assert!((w - exact).abs() <= 1e-10 * scale, "n={n} x={x}: {w} vs {exact}");
        }
    }
}

#[test]
fn three_term_recurrence_holds() {
    for x in grid() {
        for n in 1..29u32 {
            let jm = bessel_j(n - 1, x).unwrap();
            let j = bessel_j(n, x).unwrap();
            let jp = bessel_j(n + 1, x).unwrap();
            let r = jm + jp - 2.0 * n as f64 / x * j;
            assert!(r.abs() <= 1e-10 * (jm.abs() + jp.abs()).max(1e-300), "J n={n} x={x}: {r}");
            let ym = bessel_y(n - 1, x).unwrap();
            let y = bessel_y(n, x).unwrap();
            let yp = bessel_y(n + 1, x).unwrap();
            let r = ym + yp - 2.0 * n as f64 / x * y;
            assert!(r.abs() <= 1e-10 * (ym.abs() + yp.abs()), "Y n={n} x={x}: {r}");
        }
    }
}

#[test]
fn matches_power_series() {
    for i in 1..=200 {
        let x = 0.05 * i as f64;
        for n in 0..=20u32 {
            let a = bessel_j(n, x).unwrap();
            let b = series_j(n, x);
            // the alternating series loses about e^x·ε to cancellation
            let tol = 1e-13 * b.abs().max(1e-3) + 4.0 * f64::EPSILON * x.exp();
            assert!((a - b).abs() <= tol, "n={n} x={x}: {a} vs {b}");
        }
    }
}

#[test]
fn derivatives_follow_recurrence() {
    for x in [0.3, 2.0, 7.5, 31.0] {
        for n in 1..10u32 {
            let d = bessel_j_derivative(n, x).unwrap();
            let expect = 0.5 * (bessel_j(n - 1, x).unwrap() - bessel_j(n + 1, x).unwrap());
            assert!((d - expect).abs() < 1e-13);
            let hd = hankel1_derivative(n, x).unwrap();
            let he = 0.5 * (hankel1(n - 1, x).unwrap() - hankel1(n + 1, x).unwrap());
            assert!((hd - he).norm() <= 1e-12 * he.norm().max(1.0));
        }
    }
}

#[test]
fn large_order_limit() {
    assert!(bessel_j(100, 5.0).is_ok());
    assert!(bessel_j(101, 5.0).is_err());
    assert!(bessel_y(2, 0.0).is_err());
    assert!(bessel_j(0, -1.0).is_err());
}
