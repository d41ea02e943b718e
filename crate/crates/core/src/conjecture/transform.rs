use std::f64::consts::PI;

use super::point::FeasiblePoint;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};

/// Maps of `X` that leave its singular values unchanged, realized on `(A, B)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Transform {
    Transpose,
    Conjugate,
    Adjoint,
    /// `I ⊗ A + B ⊗ I`, i.e. `(A, B) -> (B, A)`.
    Swap,
    Phase(f64),
    LocalUnitary { u: ComplexMatrix, v: ComplexMatrix },
}

const UNITARY_TOL: f64 = 1e-10;

impl Transform {
    pub fn name(&self) -> &'static str {
        match self {
            Transform::Transpose => "transpose",
            Transform::Conjugate => "conjugate",
            Transform::Adjoint => "adjoint",
            Transform::Swap => "swap",
            Transform::Phase(_) => "phase",
            Transform::LocalUnitary { .. } => "local_unitary",
        }
    }

    /// One of each kind, with a random phase and random unitaries.
    pub fn random_set<R: rand::Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<Transform> {
        vec![
            Transform::Transpose,
            Transform::Conjugate,
            Transform::Adjoint,
            Transform::Swap,
            Transform::Phase(rng.random_range(0.0..2.0 * PI)),
            Transform::LocalUnitary {
                u: ComplexMatrix::random_unitary(d, rng),
                v: ComplexMatrix::random_unitary(d, rng),
            },
        ]
    }
}

pub fn apply_transform(p: &FeasiblePoint, which: &Transform) -> Result<FeasiblePoint> {
    let (a, b) = (p.a(), p.b());
    let (na, nb) = match which {
        Transform::Transpose => (a.transpose(), b.transpose()),
        Transform::Conjugate => (a.conj(), b.conj()),
        Transform::Adjoint => (a.adjoint(), b.adjoint()),
        Transform::Swap => (b.clone(), a.clone()),
        Transform::Phase(theta) => {
            let z = C64::from_polar(1.0, *theta);
            (a.scale(z), b.scale(z))
        }
        Transform::LocalUnitary { u, v } => {
            for m in [u, v] {
                if m.rows() != p.d() || !m.is_square() {
                    return Err(Error::Dimension(format!("local unitary must be {0}x{0}", p.d())));
                }
                let deviation = m.unitary_deviation();
                if deviation > UNITARY_TOL {
                    return Err(Error::NotUnitary { deviation });
                }
            }
            (a.conjugate_by(u)?, b.conjugate_by(v)?)
        }
    };
    Ok(FeasiblePoint::from_parts_unchecked(na, nb, p.is_normalized()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjecture::paths::objective;
    use crate::conjecture::point::{assemble_x, project_to_feasible};
    use crate::linalg::{singular_values_all, tensor};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_point(d: usize, rng: &mut ChaCha8Rng) -> FeasiblePoint {
        project_to_feasible(&ComplexMatrix::random_gaussian(d, d, rng), &ComplexMatrix::random_gaussian(d, d, rng))
            .unwrap()
    }

    #[test]
    fn swap_reorders_tensor_factors() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = random_point(3, &mut rng);
        let s = apply_transform(&p, &Transform::Swap).unwrap();
        let i = ComplexMatrix::identity(3);
        let expect = &tensor(&i, p.a()) + &tensor(p.b(), &i);
        assert!(assemble_x(&s).max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn singular_values_survive_every_transform() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let p = random_point(4, &mut rng);
        let s0 = singular_values_all(&assemble_x(&p));
        for t in Transform::random_set(4, &mut rng) {
            let q = apply_transform(&p, &t).unwrap();
            let s1 = singular_values_all(&assemble_x(&q));
            for (x, y) in s0.iter().zip(&s1) {
                assert!((x - y).abs() < 1e-12, "{}", t.name());
            }
            assert!((objective(&p) - objective(&q)).abs() < 1e-12);
        }
    }

    #[test]
    fn phase_keeps_feasibility() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = random_point(4, &mut rng);
        let q = apply_transform(&p, &Transform::Phase(PI / 3.0)).unwrap();
        assert!((q.norm_sq() - 0.25).abs() < 1e-14);
        assert!(q.a().trace().norm() < 1e-12);
    }

    #[test]
    fn rejects_non_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let p = random_point(3, &mut rng);
        let bad = Transform::LocalUnitary { u: ComplexMatrix::identity(3).scale_real(2.0), v: ComplexMatrix::identity(3) };
        assert!(matches!(apply_transform(&p, &bad), Err(Error::NotUnitary { .. })));
        let wrong = Transform::LocalUnitary { u: ComplexMatrix::identity(2), v: ComplexMatrix::identity(3) };
        assert!(apply_transform(&p, &wrong).is_err());
    }
}
