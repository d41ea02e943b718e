//! Structural tests for sampled matrices, independent of how they were built.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{hermitian_eigs, null_space, ComplexMatrix};

pub fn is_normal(m: &ComplexMatrix) -> bool {
    m.is_normal()
}

/// Whether `m` is unitarily similar to a direct sum of `1 × 1` and `2 × 2`
/// blocks.
///
/// The commutant of `{m, mᴴ}` is a *-algebra; a generic Hermitian element of
/// it has eigenspaces exactly as large as the irreducible blocks of `m`.
pub fn in_block2_class(m: &ComplexMatrix) -> bool {
    let d = m.rows();
    if d <= 2 {
        return true;
    }
    let n = d * d;
    let mh = m.adjoint();
    let mut l = ComplexMatrix::zeros(2 * n, n);
    for (half, op) in [m, &mh].into_iter().enumerate() {
        for a in 0..d {
            for b in 0..d {
                let row = half * n + a * d + b;
                for c in 0..d {
                    l[(row, c * d + b)] += op[(a, c)];
                    l[(row, a * d + c)] -= op[(c, b)];
                }
            }
        }
    }
    let commutant = null_space(&l, 1e-14);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut h = ComplexMatrix::zeros(d, d);
    for y in &commutant {
        let ym = ComplexMatrix::from_vec(d, d, y.clone()).expect("d*d entries");
        let herm = &ym + &ym.adjoint();
        h = &h + &herm.scale_real(rng.random_range(-1.0..1.0));
    }
    let Ok(eig) = hermitian_eigs(&h) else { return false };
    let scale = eig.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let tol = 1e-8 * scale;
    let mut run = 1;
    for k in 1..d {
        if eig.values[k - 1] - eig.values[k] <= tol {
            run += 1;
            if run > 2 {
                return false;
            }
        } else {
            run = 1;
        }
    }
    true
}

/// Unitarily similar to two traceless `2 × 2` blocks (or normal):
/// in the block-2 class with a normal square.
pub fn paired_swap_like(m: &ComplexMatrix) -> bool {
    if m.rows() != 4 {
        return false;
    }
    let sq = m.matmul(m).expect("square");
    in_block2_class(m) && sq.is_normal()
}

/// Necessary conditions for the weighted 4-cycle shape:
/// `tr M = tr M² = tr M³ = 0` and `M⁴ ∝ I`.
pub fn weighted_cycle_like(m: &ComplexMatrix) -> bool {
    if m.rows() != 4 {
        return false;
    }
    let scale = m.frobenius_norm_sq().max(f64::MIN_POSITIVE);
    let m2 = m.matmul(m).expect("square");
    let m3 = m2.matmul(m).expect("square");
    let m4 = m2.matmul(&m2).expect("square");
    let traces_vanish = [m.trace().norm() / scale.sqrt(), m2.trace().norm() / scale, m3.trace().norm() / scale.powf(1.5)]
        .iter()
        .all(|&t| t < 1e-10);
    let c = m4.trace() / 4.0;
    let scalar = &m4 - &ComplexMatrix::identity(4).scale(c);
    traces_vanish && scalar.frobenius_norm() < 1e-10 * scale * scale
}
