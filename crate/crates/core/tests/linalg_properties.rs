use distill_core::linalg::{
    hermitian_eigs, partial_transpose, singular_values_all, svd, tensor, ComplexMatrix, C64,
};
use nalgebra::DMatrix;
use num_complex::Complex;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn to_na(m: &ComplexMatrix) -> DMatrix<Complex<f64>> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn weyl_inequality(seed in any::<u64>(), n in 2usize..9, scale in 0.01f64..10.0) {
        let mut r = rng(seed);
        let a = ComplexMatrix::random_gaussian(n, n, &mut r).scale_real(scale);
        let b = ComplexMatrix::random_gaussian(n, n, &mut r);
        let sa = singular_values_all(&a);
        let sb = singular_values_all(&b);
        let sab = singular_values_all(&(&a + &b));
        for i in 0..n {
            for j in 0..n - i {
                prop_assert!(sab[i + j] <= sa[i] + sb[j] + 1e-10, "i={i} j={j}");
            }
        }
    }

    #[test]
    fn unitary_invariance(seed in any::<u64>(), rows in 1usize..8, cols in 1usize..8) {
        let mut r = rng(seed);
        let m = ComplexMatrix::random_gaussian(rows, cols, &mut r);
        let u = ComplexMatrix::random_unitary(rows, &mut r);
        let v = ComplexMatrix::random_unitary(cols, &mut r);
        let umv = u.matmul(&m).unwrap().matmul(&v).unwrap();
        for (x, y) in singular_values_all(&m).iter().zip(singular_values_all(&umv)) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn kronecker_sum_of_diagonals(seed in any::<u64>(), d in 2usize..7) {
        let mut r = rng(seed);
        let a: Vec<C64> = ComplexMatrix::random_gaussian(d, 1, &mut r).into_vec();
        let b: Vec<C64> = ComplexMatrix::random_gaussian(d, 1, &mut r).into_vec();
        let id = ComplexMatrix::identity(d);
        let x = &tensor(&ComplexMatrix::diag(&a), &id) + &tensor(&id, &ComplexMatrix::diag(&b));
        let mut expect: Vec<f64> = a.iter().flat_map(|ai| b.iter().map(move |bj| (ai + bj).norm())).collect();
        expect.sort_by(|p, q| q.total_cmp(p));
        for (x, y) in singular_values_all(&x).iter().zip(&expect) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn partial_transpose_keeps_trace_and_norm(seed in any::<u64>(), da in 1usize..5, db in 1usize..5) {
        let mut r = rng(seed);
        let m = ComplexMatrix::random_gaussian(da * db, da * db, &mut r);
        let g = partial_transpose(&m, da, db).unwrap();
        prop_assert!((g.trace() - m.trace()).norm() < 1e-12);
        prop_assert!((g.frobenius_norm() - m.frobenius_norm()).abs() < 1e-12);
    }

    #[test]
    fn svd_agrees_with_nalgebra(seed in any::<u64>(), rows in 1usize..12, cols in 1usize..12) {
        let mut r = rng(seed);
        let m = ComplexMatrix::random_gaussian(rows, cols, &mut r);
        let mut reference: Vec<f64> = to_na(&m).singular_values().iter().copied().collect();
        reference.sort_by(|p, q| q.total_cmp(p));
        let ours = svd(&m).s;
        prop_assert_eq!(ours.len(), reference.len());
        for (x, y) in ours.iter().zip(&reference) {
            prop_assert!((x - y).abs() < 1e-11 * reference[0].max(1.0));
        }
    }

    #[test]
    fn hermitian_eigs_agree_with_nalgebra(seed in any::<u64>(), n in 1usize..14) {
        let mut r = rng(seed);
        let g = ComplexMatrix::random_gaussian(n, n, &mut r);
        let h = (&g + &g.adjoint()).scale_real(0.5);
        let mut reference: Vec<f64> = to_na(&h).symmetric_eigenvalues().iter().copied().collect();
        reference.sort_by(|p, q| q.total_cmp(p));
        let ours = hermitian_eigs(&h).unwrap().values;
        for (x, y) in ours.iter().zip(&reference) {
            prop_assert!((x - y).abs() < 1e-11 * h.frobenius_norm().max(1.0));
        }
    }
}

#[test]
fn svd_on_kronecker_sizes() {
    let mut r = rng(3);
    for d in [4, 8, 16] {
        let m = ComplexMatrix::random_gaussian(d * d, d * d, &mut r);
        let dec = svd(&m);
        let err = (&dec.reconstruct() - &m).frobenius_norm();
        assert!(err < 1e-12 * m.frobenius_norm(), "d={d} err={err}");
    }
}
