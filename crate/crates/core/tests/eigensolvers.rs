use chipqed::linalg::{eigh_dense, eigh_tridiagonal, EigenResult, SymTridiagonal};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_tridiagonal(rng: &mut ChaCha8Rng, n: usize) -> SymTridiagonal {
    let diag = (0..n).map(|_| rng.gen_range(-10.0..10.0)).collect();
    let off = (0..n.saturating_sub(1)).map(|_| rng.gen_range(-5.0..5.0)).collect();
    SymTridiagonal::new(diag, off).unwrap()
}

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    let a = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    (&a + a.transpose()) * 0.5
}

fn random_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    let a = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    a.qr().q()
}

fn residual(m: &DMatrix<f64>, lambda: f64, v: &[f64]) -> f64 {
    let v = nalgebra::DVector::from_column_slice(v);
    (m * &v - &v * lambda).norm()
}

fn check_invariants(m: &DMatrix<f64>, r: &EigenResult) {
    assert!(r.values.windows(2).all(|w| w[0] <= w[1]), "not ascending");
    for (i, (lam, v)) in r.values.iter().zip(&r.vectors).enumerate() {
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() <= 1e-12, "norm {norm}");
        let res = residual(m, *lam, v);
        assert!(res <= 1e-10 * lam.abs().max(1.0), "residual {res} for {lam}");
        for w in &r.vectors[i + 1..] {
            let d: f64 = v.iter().zip(w).map(|(a, b)| a * b).sum();
            assert!(d.abs() <= 1e-10, "overlap {d}");
        }
    }
}

#[test]
fn tridiagonal_matches_dense_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    for case in 0..100 {
        let n = 1 + (case * 37) % 64;
        let t = random_tridiagonal(&mut rng, n);
        let dense = t.to_dense();
        let a = eigh_tridiagonal(&t, n).unwrap();
        let b = eigh_dense(&dense, n).unwrap();
        check_invariants(&dense, &a);
        check_invariants(&dense, &b);
        for (x, y) in a.values.iter().zip(&b.values) {
            let rel = (x - y).abs() / x.abs().max(1.0);
            worst = worst.max(rel);
        }
    }
    assert!(worst <= 1e-9, "worst relative disagreement {worst:e}");
}

#[test]
fn dense_spectrum_is_similarity_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [2, 5, 12, 30] {
        let h = random_symmetric(&mut rng, n);
        let q = random_orthogonal(&mut rng, n);
        let g = &q * &h * q.transpose();
        let g = (&g + g.transpose()) * 0.5;
        let a = eigh_dense(&h, n).unwrap();
        let b = eigh_dense(&g, n).unwrap();
        for (x, y) in a.values.iter().zip(&b.values) {
            assert!((x - y).abs() <= 1e-10 * h.norm().max(1.0));
        }
    }
}

/// Projector onto the eigenspace of `values[lo..hi]`.
fn projector(r: &EigenResult, lo: usize, hi: usize, n: usize) -> DMatrix<f64> {
    let mut p = DMatrix::zeros(n, n);
    for v in &r.vectors[lo..hi] {
        let v = nalgebra::DVector::from_column_slice(v);
        p += &v * v.transpose();
    }
    p
}

#[test]
fn degenerate_eigenspaces_agree_as_projectors() {
    // Block-diagonal tridiagonal with a repeated eigenvalue: two identical
    // 2x2 blocks decoupled by a zero off-diagonal.
    let t = SymTridiagonal::new(vec![1.0, 2.0, 1.0, 2.0, 5.0], vec![0.5, 0.0, 0.5, 0.0]).unwrap();
    let a = eigh_tridiagonal(&t, 5).unwrap();
    let b = eigh_dense(&t.to_dense(), 5).unwrap();
    assert!((a.values[0] - a.values[1]).abs() < 1e-12);
    let pa = projector(&a, 0, 2, 5);
    let pb = projector(&b, 0, 2, 5);
    assert!((pa - pb).norm() < 1e-10);
    let pa = projector(&a, 2, 4, 5);
    let pb = projector(&b, 2, 4, 5);
    assert!((pa - pb).norm() < 1e-10);
}

#[test]
fn truncated_results_are_prefixes() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let t = random_tridiagonal(&mut rng, 41);
    let full = eigh_tridiagonal(&t, 41).unwrap();
    let few = eigh_tridiagonal(&t, 3).unwrap();
    assert_eq!(&full.values[..3], &few.values[..]);
    let dense = eigh_dense(&t.to_dense(), 3).unwrap();
    assert_eq!(dense.len(), 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tridiagonal_invariants_hold(
        diag in proptest::collection::vec(-50.0f64..50.0, 1..40),
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let off: Vec<f64> = (0..diag.len() - 1).map(|_| rng.gen_range(-20.0..20.0)).collect();
        let t = SymTridiagonal::new(diag, off).unwrap();
        let n = t.dim();
        let r = eigh_tridiagonal(&t, n).unwrap();
        check_invariants(&t.to_dense(), &r);
        // Trace is preserved.
        let trace: f64 = t.diag().iter().sum();
        let sum: f64 = r.values.iter().sum();
        prop_assert!((trace - sum).abs() <= 1e-9 * trace.abs().max(1.0) * n as f64);
    }

    #[test]
    fn dense_invariants_hold(n in 1usize..20, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_symmetric(&mut rng, n) * 10.0;
        let r = eigh_dense(&m, n).unwrap();
        check_invariants(&m, &r);
    }
}
