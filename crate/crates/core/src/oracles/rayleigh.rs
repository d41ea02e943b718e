use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RayleighCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// `Σaᵢxᵢ² / Σbᵢxᵢ² ≤ max aᵢ/bᵢ` for `b > 0`, `x ≠ 0`.
pub fn rayleigh_bound_check(a: &[f64], b: &[f64], x: &[f64]) -> Result<RayleighCheck> {
    if a.len() != b.len() || a.len() != x.len() || a.is_empty() {
        return Err(Error::Dimension(format!("lengths {}, {}, {}", a.len(), b.len(), x.len())));
    }
    if let Some(bad) = b.iter().find(|&&v| !(v > 0.0)) {
        return Err(Error::InvalidArgument(format!("weights must be positive, found {bad}")));
    }
    if x.iter().all(|&v| v == 0.0) {
        return Err(Error::InvalidArgument("x must be nonzero".into()));
    }
    let num: f64 = a.iter().zip(x).map(|(ai, xi)| ai * xi * xi).sum();
    let den: f64 = b.iter().zip(x).map(|(bi, xi)| bi * xi * xi).sum();
    let lhs = num / den;
    let rhs = a.iter().zip(b).map(|(ai, bi)| ai / bi).fold(f64::NEG_INFINITY, f64::max);
    Ok(RayleighCheck { lhs, rhs, holds: lhs <= rhs + 1e-12 })
}

/// `(a, b, x)` with length in `1..=max_n`, `b ∈ [0.01, 5)`, `x` not all zero.
pub fn random_rayleigh_instance<R: Rng + ?Sized>(max_n: usize, rng: &mut R) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let n = rng.random_range(1..=max_n.max(1));
    let a = (0..n).map(|_| rng.random_range(-5.0..5.0)).collect();
    let b = (0..n).map(|_| rng.random_range(0.01..5.0)).collect();
    let mut x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    if x.iter().all(|&v| v == 0.0) {
        x[0] = 1.0;
    }
    (a, b, x)
}
