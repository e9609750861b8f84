//! LU and Hermitian eigensolver on random matrices.

use gibc_core::linalg::{hermitian_abs, hermitian_eig, lu_solve, ComplexMatrix, LinalgError, LuFactors};
use gibc_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random(rng: &mut ChaCha8Rng, r: usize, c: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(r, c, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

#[test]
fn lu_solves_random_systems() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [1, 2, 7, 30, 64] {
        let a = random(&mut rng, n, n);
        let x = random(&mut rng, n, 3);
        let b = a.matmul(&x).unwrap();
        let got = lu_solve(&a, &b).unwrap();
        let cond = {
            let lu = LuFactors::new(&a).unwrap();
            gibc_core::linalg::norm1(&a) * lu.inverse_norm1_estimate()
        };
        assert!((&got - &x).max_abs() <= 1e-13 * cond.max(1.0), "n={n}");
    }
}

#[test]
fn adjoint_solve_matches_explicit_adjoint() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let a = random(&mut rng, 12, 12);
    let b: Vec<Complex64> = random(&mut rng, 12, 1).as_slice().to_vec();
    let lu = LuFactors::new(&a).unwrap();
    let x = lu.solve_adjoint_vec(&b).unwrap();
    let back = a.adjoint().matvec(&x).unwrap();
    for (u, v) in back.iter().zip(&b) {
        assert!((u - v).norm() < 1e-11);
    }
}

#[test]
fn singular_matrix_is_reported() {
    let mut a = ComplexMatrix::zeros(3, 3);
    a[(0, 0)] = Complex64::new(1.0, 0.0);
    a[(1, 1)] = Complex64::new(1.0, 0.0);
    assert!(matches!(LuFactors::new(&a), Err(LinalgError::Singular { .. })));
}

#[test]
fn eigendecomposition_reconstructs() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in [1, 3, 10, 50] {
        let h = random(&mut rng, n, n).hermitian_part();
        let eig = hermitian_eig(&h).unwrap();
        assert!(eig.orthonormality_defect() < 1e-12);
        assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
        let rebuilt = eig.spectral_map(|l| l);
        assert!((&rebuilt - &h).max_abs() < 1e-12 * h.max_abs().max(1.0), "n={n}");
        let trace: f64 = (0..n).map(|i| h[(i, i)].re).sum();
        assert!((eig.values.iter().sum::<f64>() - trace).abs() < 1e-11 * n as f64);
    }
}

#[test]
fn absolute_value_squares_to_square() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let h = random(&mut rng, 20, 20).hermitian_part();
    let abs = hermitian_abs(&h).unwrap();
    let lhs = abs.matmul(&abs).unwrap();
    let rhs = h.matmul(&h).unwrap();
    assert!((&lhs - &rhs).max_abs() < 1e-11);
    assert!(hermitian_eig(&abs).unwrap().values.iter().all(|&l| l >= -1e-12));
}

#[test]
fn rejects_non_hermitian() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a = random(&mut rng, 5, 5);
    assert!(matches!(hermitian_eig(&a), Err(LinalgError::NotHermitian { .. })));
}

#[test]
fn degenerate_spectrum_stays_orthonormal() {
    let d: Vec<Complex64> = [2.0, 2.0, 2.0, -1.0, -1.0].iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    // Q D Q* with Q from the eigenvectors of a random Hermitian matrix
    let q = hermitian_eig(&random(&mut rng, 5, 5).hermitian_part()).unwrap().vectors;
    let h = q.matmul(&ComplexMatrix::diagonal(&d)).unwrap().matmul(&q.adjoint()).unwrap();
    let eig = hermitian_eig(&h.hermitian_part()).unwrap();
    assert!(eig.orthonormality_defect() < 1e-12);
    for (got, want) in eig.values.iter().zip([2.0, 2.0, 2.0, -1.0, -1.0]) {
        assert!((got - want).abs() < 1e-12);
    }
}
