//! First-order stationarity checks with least-squares multipliers.
//!
//! Variables are the real coordinates of `(A, B)`. The linear constraints
//! are `Re tr A`, `Im tr A`, `Re tr B`, `Im tr B`; the quadratic one is
//! `‖A‖² + ‖B‖² = r` with `W = I`.

use serde::{Deserialize, Serialize};

use super::gradient::{project_tangent, raw_gradient, TangentPair, DEFAULT_SMOOTHING_EPS};
use super::structure::Structure;
use crate::conjecture::FeasiblePoint;
use crate::linalg::{ComplexMatrix, C64};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LagrangeData {
    /// Multiplier of the quadratic constraint, entering as `2μWx`.
    pub mu: f64,
    /// One multiplier per linear constraint.
    pub linear: Vec<f64>,
    /// Diagonal of `W`; empty means the identity.
    pub weights: Vec<f64>,
    pub r: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KktSummary {
    pub lagrange: LagrangeData,
    pub residual: f64,
    pub smooth: bool,
}

fn constraint_directions(d: usize) -> [TangentPair; 4] {
    let id = ComplexMatrix::identity(d);
    let iid = id.scale(C64::new(0.0, 1.0));
    let z = ComplexMatrix::zeros(d, d);
    [
        TangentPair { ga: id.clone(), gb: z.clone() },
        TangentPair { ga: iid.clone(), gb: z.clone() },
        TangentPair { ga: z.clone(), gb: id },
        TangentPair { ga: z, gb: iid },
    ]
}

fn radial(p: &FeasiblePoint) -> TangentPair {
    TangentPair { ga: p.a().clone(), gb: p.b().clone() }
}

fn fit(p: &FeasiblePoint, g: &TangentPair, sa: &Structure, sb: &Structure) -> LagrangeData {
    let linear = constraint_directions(p.d())
        .iter()
        .map(|c| {
            let c = TangentPair { ga: sa.project(&c.ga), gb: sb.project(&c.gb) };
            let n2 = c.inner(&c);
            if n2 == 0.0 { 0.0 } else { g.inner(&c) / n2 }
        })
        .collect();
    let x = radial(p);
    let x2 = x.inner(&x);
    let mu = if x2 == 0.0 { 0.0 } else { g.inner(&x) / (2.0 * x2) };
    LagrangeData { mu, linear, weights: Vec::new(), r: x2 }
}

/// Least-squares multipliers at `p` for the unrestricted feasible set.
pub fn fit_multipliers(p: &FeasiblePoint) -> LagrangeData {
    let raw = raw_gradient(p, DEFAULT_SMOOTHING_EPS);
    fit(p, &raw.grad, &Structure::Full, &Structure::Full)
}

/// `‖∇f − Σλᵢcᵢ − 2μx‖` for the given multipliers.
pub fn kkt_residual(p: &FeasiblePoint, lag: &LagrangeData) -> f64 {
    let g = raw_gradient(p, DEFAULT_SMOOTHING_EPS).grad;
    let mut ga = g.ga.clone();
    let mut gb = g.gb.clone();
    for (c, l) in constraint_directions(p.d()).iter().zip(&lag.linear) {
        ga = &ga - &c.ga.scale_real(*l);
        gb = &gb - &c.gb.scale_real(*l);
    }
    ga = &ga - &p.a().scale_real(2.0 * lag.mu);
    gb = &gb - &p.b().scale_real(2.0 * lag.mu);
    TangentPair { ga, gb }.norm()
}

/// Multipliers and residual inside a structured subspace, as seen by the
/// optimizer for a family.
pub fn structured_kkt(p: &FeasiblePoint, sa: &Structure, sb: &Structure, eps: f64) -> KktSummary {
    let raw = raw_gradient(p, eps);
    let g = TangentPair { ga: sa.project(&raw.grad.ga), gb: sb.project(&raw.grad.gb) };
    let lagrange = fit(p, &g, sa, sb);
    let residual = project_tangent(p, &raw.grad, sa, sb).norm();
    KktSummary { lagrange, residual, smooth: raw.smooth }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjecture::{extremal_point, project_to_feasible};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn extremal_point_satisfies_kkt() {
        let p = extremal_point(4).unwrap();
        let lag = fit_multipliers(&p);
        assert!(kkt_residual(&p, &lag) < 1e-8);
        // Euler: ⟨∇f, x⟩ = 2f, so 2μr = 2f
        assert!((lag.mu * lag.r - 0.5).abs() < 1e-12);
    }

    #[test]
    fn residual_agrees_with_tangent_projection() {
        let mut rng = ChaCha8Rng::seed_from_u64(60);
        let p = project_to_feasible(&ComplexMatrix::random_gaussian(4, 4, &mut rng), &ComplexMatrix::random_gaussian(4, 4, &mut rng)).unwrap();
        let lag = fit_multipliers(&p);
        let full = structured_kkt(&p, &Structure::Full, &Structure::Full, DEFAULT_SMOOTHING_EPS);
        assert!((kkt_residual(&p, &lag) - full.residual).abs() < 1e-12);
        assert!(full.residual > 1e-3);
        // any other multipliers do worse
        let mut off = lag.clone();
        off.mu *= 1.1;
        assert!(kkt_residual(&p, &off) > kkt_residual(&p, &lag));
    }
}
