use serde::{Deserialize, Serialize};

use super::point::FeasiblePoint;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Diagonal pair attaining `(3d − 4)/d²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremalSpec {
    pub d: usize,
    pub beta: f64,
}

impl ExtremalSpec {
    pub fn new(d: usize) -> Result<Self> {
        if d < 4 {
            return Err(Error::InvalidArgument(format!("extremal point needs d >= 4, got {d}")));
        }
        let df = d as f64;
        Ok(Self { d, beta: 1.0 / (df * (6.0 * df - 8.0).sqrt()) })
    }

    pub fn a_diagonal(&self) -> Vec<f64> {
        let mut a = vec![-2.0 * self.beta; self.d];
        a[0] = 2.0 * (self.d as f64 - 1.0) * self.beta;
        a
    }

    pub fn b_diagonal(&self) -> Vec<f64> {
        let mut b = vec![-2.0 * self.beta; self.d];
        b[0] = (self.d as f64 - 2.0) * self.beta;
        b[1] = b[0];
        b
    }

    pub fn point(&self) -> FeasiblePoint {
        FeasiblePoint::from_parts_unchecked(
            ComplexMatrix::real_diag(&self.a_diagonal()),
            ComplexMatrix::real_diag(&self.b_diagonal()),
            true,
        )
    }
}

pub fn extremal_point(d: usize) -> Result<FeasiblePoint> {
    let spec = ExtremalSpec::new(d)?;
    // re-validate so rounding in beta can never slip an infeasible point out
    let p = spec.point();
    let (a, b) = p.into_parts();
    FeasiblePoint::new(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjecture::paths::{objective, objective_via};
    use crate::conjecture::point::{assemble_x, bound};

    #[test]
    fn d4_values() {
        let s = ExtremalSpec::new(4).unwrap();
        assert!((s.beta - 1.0 / 16.0).abs() < 1e-17);
        let a: Vec<f64> = s.a_diagonal().iter().map(|v| v * 16.0).collect();
        let b: Vec<f64> = s.b_diagonal().iter().map(|v| v * 16.0).collect();
        assert_eq!(a, vec![6.0, -2.0, -2.0, -2.0]);
        assert_eq!(b, vec![2.0, 2.0, -2.0, -2.0]);
        let p = extremal_point(4).unwrap();
        assert!((p.norm_sq() - 64.0 * s.beta * s.beta).abs() < 1e-16);
    }

    #[test]
    fn top_sums_at_d4() {
        let s = ExtremalSpec::new(4).unwrap();
        let mut sums: Vec<f64> = s
            .a_diagonal()
            .iter()
            .flat_map(|a| s.b_diagonal().into_iter().map(move |b| (a + b).abs()))
            .collect();
        sums.sort_by(|x, y| y.total_cmp(x));
        assert!((sums[0] - 0.5).abs() < 1e-16 && (sums[1] - 0.5).abs() < 1e-16);
        assert!(sums[2] < 0.5 - 0.1);
    }

    #[test]
    fn assembled_x_is_diagonal_of_sums() {
        let p = extremal_point(4).unwrap();
        let x = assemble_x(&p);
        assert!(x.is_diagonal(0.0));
        let a = p.a().diagonal();
        let b = p.b().diagonal();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(x[(4 * i + j, 4 * i + j)], a[i] + b[j]);
            }
        }
    }

    #[test]
    fn attains_bound() {
        for d in 4..=8 {
            let p = extremal_point(d).unwrap();
            for path in ["closed_form", "block", "dense"] {
                let v = objective_via(&p, path).unwrap();
                assert!((v - bound(d)).abs() < 1e-12, "d={d} {path}: {v}");
            }
        }
        assert!((objective(&extremal_point(5).unwrap()) - 0.44).abs() < 1e-12);
    }

    #[test]
    fn small_d_rejected() {
        assert!(extremal_point(3).is_err());
        assert!(extremal_point(2).is_err());
    }
}
