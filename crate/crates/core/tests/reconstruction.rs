//! End-to-end reconstructions: the indicator separates inside from outside.

use gibc_core::factorization::{median, run_inversion, IndicatorMap, InversionSettings, SamplingGrid};
use gibc_core::forward::{circle_series_oracle, solve_forward, FarFieldMatrix, ScatteringConfig};
use gibc_core::geometry::Curve;
use gibc_core::noise::{contaminate, NoiseSpec};
use gibc_core::surface::ImpedanceParams;
use gibc_core::Complex64;

const MU: Complex64 = Complex64::new(0.1, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn kite(k: f64) -> FarFieldMatrix {
    let imp = ImpedanceParams::constant(MU, ZERO).unwrap();
    let cfg = ScatteringConfig::new(Curve::Kite, imp, k, 50, 128).unwrap();
    solve_forward(&cfg).unwrap().far_field
}

fn separation(curve: &Curve, map: &IndicatorMap) -> f64 {
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for p in &map.points {
        if curve.contains(p.z) {
            inside.push(p.total);
        } else if curve.distance_to(p.z, 1024) >= 0.5 {
            outside.push(p.total);
        }
    }
    median(&mut inside).unwrap() / median(&mut outside).unwrap()
}

fn coarse() -> InversionSettings {
    InversionSettings { grid: SamplingGrid::square(3.0, 40), ..Default::default() }
}

#[test]
fn noiseless_circle_from_mode_series() {
    let u = circle_series_oracle(1.0, 2.0, MU, ZERO, 50, 40).unwrap();
    let map = run_inversion(&u, 2.0, coarse()).unwrap();
    assert!(separation(&Curve::circle(1.0).unwrap(), &map) >= 10.0);
    assert_eq!(map.morozov_fallbacks, 0);
}

#[test]
fn noisy_kite_is_separated() {
    let noisy = contaminate(&kite(2.0), &NoiseSpec::new(0.01, 7).unwrap());
    let map = run_inversion(&noisy, 2.0, coarse()).unwrap();
    let ratio = separation(&Curve::Kite, &map);
    assert!(ratio >= 5.0, "{ratio}");
    assert!(map.totals().all(|w| w.is_finite() && w > 0.0));
}

#[test]
fn higher_frequency_sharpens_the_kite() {
    let low = run_inversion(&kite(1.0), 1.0, coarse()).unwrap();
    let high = run_inversion(&kite(4.0), 4.0, coarse()).unwrap();
    assert!(separation(&Curve::Kite, &high) >= separation(&Curve::Kite, &low));
}

#[test]
fn wavenumber_must_match_data() {
    assert!(run_inversion(&kite(2.0), 3.0, coarse()).is_err());
}
