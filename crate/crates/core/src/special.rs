//! Cylindrical Bessel functions `J_n`, `Y_n` and the Hankel function
//! `H_n^(1) = J_n + i Y_n` for integer order and real argument.
//!
//! Evaluation regimes:
//!
//! * `x < 1`: ascending power series for `J_n`.
//! * `1 <= x < 25`, or `n >= x`: Miller backward recurrence normalized by
//!   `J_0 + 2 Σ J_2k = 1`.
//! * `x >= 25`: Hankel asymptotic expansions for orders 0 and 1, then
//!   forward recurrence (stable for `n < x`).
//!
//! `Y_0` and `Y_1` come from Neumann series over the `J_k` sequence below
//! `x = 25` and from the asymptotic expansions above; higher orders use the
//! forward recurrence, which is stable for `Y` everywhere.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_2_PI, FRAC_PI_4};

use num_complex::Complex64;
#[allow(unused_imports)] // inherent when std is in the dependency graph
use num_traits::Float;
use thiserror::Error;

/// Largest supported order.
pub const MAX_ORDER: u32 = 100;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const ASYMPTOTIC_THRESHOLD: f64 = 25.0;
const SERIES_THRESHOLD: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SpecialFunctionError {
    #[error("order {0} exceeds the supported maximum {MAX_ORDER}")]
    OrderTooLarge(u32),
    #[error("argument {0} outside the domain of the function")]
    Domain(f64),
}

fn check_order(order: u32) -> Result<(), SpecialFunctionError> {
    if order > MAX_ORDER {
        Err(SpecialFunctionError::OrderTooLarge(order))
    } else {
        Ok(())
    }
}

/// Bessel function of the first kind `J_order(x)`, `x >= 0`.
pub fn bessel_j(order: u32, x: f64) -> Result<f64, SpecialFunctionError> {
    check_order(order)?;
    if !x.is_finite() || x < 0.0 {
        return Err(SpecialFunctionError::Domain(x));
    }
    Ok(j_sequence(order, x)[order as usize])
}

/// Bessel function of the second kind `Y_order(x)`, `x > 0`.
pub fn bessel_y(order: u32, x: f64) -> Result<f64, SpecialFunctionError> {
    check_order(order)?;
    if !x.is_finite() || x <= 0.0 {
        return Err(SpecialFunctionError::Domain(x));
    }
    let (_, y) = jy_sequences(order, x);
    Ok(y[order as usize])
}

/// Hankel function of the first kind `H_order^(1)(x)`, `x > 0`.
pub fn hankel1(order: u32, x: f64) -> Result<Complex64, SpecialFunctionError> {
    check_order(order)?;
    if !x.is_finite() || x <= 0.0 {
        return Err(SpecialFunctionError::Domain(x));
    }
    let (j, y) = jy_sequences(order, x);
    let n = order as usize;
    Ok(Complex64::new(j[n], y[n]))
}

/// Derivative `d/dx H_order^(1)(x)` from `H_m' = H_{m-1} − (m/x) H_m`
/// (and `H_0' = −H_1`).
pub fn hankel1_derivative(order: u32, x: f64) -> Result<Complex64, SpecialFunctionError> {
    check_order(order)?;
    if !x.is_finite() || x <= 0.0 {
        return Err(SpecialFunctionError::Domain(x));
    }
    let (j, y) = jy_sequences(order.max(1), x);
    Ok(hankel_derivative_from(&j, &y, order as usize, x))
}

/// `J_m'(x)` from `J_m' = J_{m-1} − (m/x) J_m`.
pub fn bessel_j_derivative(order: u32, x: f64) -> Result<f64, SpecialFunctionError> {
    check_order(order)?;
    if !x.is_finite() || x < 0.0 {
        return Err(SpecialFunctionError::Domain(x));
    }
    let j = j_sequence(order.max(1), x);
    let m = order as usize;
    Ok(if m == 0 {
        -j[1]
    } else if x == 0.0 {
        // J_m'(0) = 1/2 for m = 1, 0 otherwise
        if m == 1 {
            0.5
        } else {
            0.0
        }
    } else {
        j[m - 1] - (m as f64 / x) * j[m]
    })
}

fn hankel_derivative_from(j: &[f64], y: &[f64], m: usize, x: f64) -> Complex64 {
    if m == 0 {
        -Complex64::new(j[1], y[1])
    } else {
        Complex64::new(j[m - 1], y[m - 1]) - (m as f64 / x) * Complex64::new(j[m], y[m])
    }
}

/// Cylinder functions of orders 0..=`max_order` at `x > 0`, returned as
/// `(J, Y)` vectors of length `max_order + 1`. Unchecked: the caller
/// guarantees the order bound and the argument domain.
pub(crate) fn jy_sequences(max_order: u32, x: f64) -> (Vec<f64>, Vec<f64>) {
    let nmax = max_order.max(1) as usize;
    let mut y = vec![0.0; nmax + 1];
    let j = if x >= ASYMPTOTIC_THRESHOLD {
        let (j0, j1, y0, y1) = asymptotic_01(x);
        y[0] = y0;
        y[1] = y1;
        if (nmax as f64) < x {
            forward_recurrence(j0, j1, nmax, x)
        } else {
            miller(nmax, x)
        }
    } else {
        // The Neumann series need even orders well past x.
        let needed = nmax.max(neumann_terms(x));
        let full = if x < SERIES_THRESHOLD {
            power_series_sequence(needed, x)
        } else {
            miller(needed, x)
        };
        let (y0, y1) = neumann_y01(&full, x);
        y[0] = y0;
        y[1] = y1;
        full[..=nmax].to_vec()
    };
    for n in 1..nmax {
        y[n + 1] = (2.0 * n as f64 / x) * y[n] - y[n - 1];
    }
    (j, y)
}

/// `(J_0, J_1, Y_0, Y_1)` at `x > 0`, the four values every Helmholtz
/// kernel in two dimensions needs.
pub(crate) fn cylinder_01(x: f64) -> (f64, f64, f64, f64) {
    if x >= ASYMPTOTIC_THRESHOLD {
        return asymptotic_01(x);
    }
    let terms = neumann_terms(x);
    let seq = if x < SERIES_THRESHOLD {
        power_series_sequence(terms, x)
    } else {
        miller(terms, x)
    };
    let (y0, y1) = neumann_y01(&seq, x);
    (seq[0], seq[1], y0, y1)
}

fn j_sequence(max_order: u32, x: f64) -> Vec<f64> {
    let nmax = max_order.max(1) as usize;
    if x == 0.0 {
        let mut out = vec![0.0; nmax + 1];
        out[0] = 1.0;
        return out;
    }
    if x < SERIES_THRESHOLD {
        power_series_sequence(nmax, x)
    } else if x < ASYMPTOTIC_THRESHOLD || (nmax as f64) >= x {
        miller(nmax, x)
    } else {
        let (j0, j1, _, _) = asymptotic_01(x);
        forward_recurrence(j0, j1, nmax, x)
    }
}

fn neumann_terms(x: f64) -> usize {
    // J_k(x) is below 1e-20 of the leading terms once k > x + 12 x^(1/3) + 20
    let n = (x + 12.0 * x.cbrt() + 20.0).ceil() as usize;
    n + (n & 1) + 2
}

fn forward_recurrence(j0: f64, j1: f64, nmax: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; nmax + 1];
    out[0] = j0;
    out[1] = j1;
    for n in 1..nmax {
        out[n + 1] = (2.0 * n as f64 / x) * out[n] - out[n - 1];
    }
    out
}

/// `J_0..=J_nmax` by the ascending series, used for `0 < x < 1`.
fn power_series_sequence(nmax: usize, x: f64) -> Vec<f64> {
    let half = 0.5 * x;
    let q = -half * half;
    let mut out = vec![0.0; nmax + 1];
    // leading factor (x/2)^n / n!
    let mut lead = 1.0;
    for (n, slot) in out.iter_mut().enumerate() {
        if n > 0 {
            lead *= half / n as f64;
        }
        if lead == 0.0 {
            break;
        }
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..60 {
            term *= q / (k as f64 * (k + n) as f64);
            sum += term;
            if term.abs() < 1e-18 * sum.abs() {
                break;
            }
        }
        *slot = lead * sum;
    }
    out
}

/// Miller backward recurrence for `J_0..=J_nmax`, normalized by
/// `J_0 + 2 Σ_{k>=1} J_2k = 1`.
fn miller(nmax: usize, x: f64) -> Vec<f64> {
    let base = (nmax as f64).max(x);
    let mut start = (base + 16.0 + (40.0 * base).sqrt()).ceil() as usize;
    start += start & 1;
    let mut out = vec![0.0; nmax + 1];
    let mut next = 0.0;
    let mut cur = 1e-30;
    let mut sum = 0.0;
    let rescale = 1e250;
    for k in (1..=start).rev() {
        if k <= nmax {
            out[k] = cur;
        }
        if k % 2 == 0 {
            sum += 2.0 * cur;
        }
        let prev = (2.0 * k as f64 / x) * cur - next;
        next = cur;
        cur = prev;
        if cur.abs() > rescale {
            cur /= rescale;
            next /= rescale;
            sum /= rescale;
            for v in out.iter_mut().skip(k) {
                *v /= rescale;
            }
        }
    }
    out[0] = cur;
    sum += cur;
    for v in out.iter_mut() {
        *v /= sum;
    }
    out
}

/// Neumann series for `Y_0`, `Y_1` from a `J` sequence whose tail is
/// negligible.
///
/// `Y_0 = (2/π)(ln(x/2)+γ) J_0 − (4/π) Σ (−1)^k J_2k / k`, and `Y_1 = −Y_0'`.
fn neumann_y01(j: &[f64], x: f64) -> (f64, f64) {
    let log_term = (0.5 * x).ln() + EULER_GAMMA;
    let mut s0 = 0.0;
    let mut s1 = 0.0;
    let mut sign = -1.0;
    let mut k = 1;
    while 2 * k + 1 < j.len() {
        s0 += sign * j[2 * k] / k as f64;
        s1 += sign * (j[2 * k - 1] - j[2 * k + 1]) / k as f64;
        sign = -sign;
        k += 1;
    }
    let y0 = FRAC_2_PI * log_term * j[0] - 2.0 * FRAC_2_PI * s0;
    let y1 = -FRAC_2_PI * j[0] / x + FRAC_2_PI * log_term * j[1] + FRAC_2_PI * s1;
    (y0, y1)
}

/// Hankel asymptotic expansion for orders 0 and 1, `x >= 25`.
fn asymptotic_01(x: f64) -> (f64, f64, f64, f64) {
    let amp = (FRAC_2_PI / x).sqrt();
    let (sx, cx) = x.sin_cos();
    // chi = x - pi/4 and x - 3pi/4, expanded to keep the argument reduction exact
    let (s4, c4) = FRAC_PI_4.sin_cos();
    let sin0 = sx * c4 - cx * s4;
    let cos0 = cx * c4 + sx * s4;
    // x - 3pi/4 = (x - pi/4) - pi/2
    let sin1 = -cos0;
    let cos1 = sin0;
    let (p0, q0) = asymptotic_pq(0.0, x);
    let (p1, q1) = asymptotic_pq(4.0, x);
    let j0 = amp * (p0 * cos0 - q0 * sin0);
    let y0 = amp * (p0 * sin0 + q0 * cos0);
    let j1 = amp * (p1 * cos1 - q1 * sin1);
    let y1 = amp * (p1 * sin1 + q1 * cos1);
    (j0, j1, y0, y1)
}

/// `P` and `Q` of the Hankel expansion, `mu = 4 ν²`.
fn asymptotic_pq(mu: f64, x: f64) -> (f64, f64) {
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        let mag = term.abs();
        if mag > last {
            break;
        }
        // signs follow (-1)^floor(k/2) for P (even k) and (-1)^((k-1)/2) for Q (odd k)
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
        if mag < 1e-17 {
            break;
        }
        last = mag;
    }
    (p, q)
}
