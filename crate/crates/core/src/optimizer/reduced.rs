//! The six-variable two-block problem: maximize `h(x, y, z, w, p, q)` on
//! the ellipsoid `φᵀWφ = 1/(2d)`, then read off the multiplier from
//! `∇h = 2μWφ`.

use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::conjecture::ReducedCoordinates;
use crate::parallel::map_indexed;
use crate::rng::stream;

const ARMIJO_C: f64 = 1e-4;
const MAX_ITERS: usize = 20_000;
// stationarity measured as ‖tangent part of ∇h‖ / ‖∇h‖
const STOP_TOL: f64 = 1e-10;
// h is flat to roundoff along some directions near its maximizers, so the
// last digits of stationarity are out of reach; this is what counts as done
const CONVERGED_TOL: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReducedOptimum {
    pub coords: ReducedCoordinates,
    pub h: f64,
    /// Least-squares `μ` from `∇h = 2μWφ`.
    pub mu: f64,
    /// `‖∇h − 2μWφ‖`.
    pub residual: f64,
    /// `|μ − 2dh| / μ`.
    pub ratio: f64,
    pub iterations: usize,
    pub converged: bool,
}

fn dot(a: &[f64; 6], b: &[f64; 6]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn retract(d: usize, v: [f64; 6]) -> [f64; 6] {
    let c = ReducedCoordinates::from_vec(d, v).constraint();
    let s = (ReducedCoordinates::target(d) / c).sqrt();
    v.map(|x| x * s)
}

fn tangent(d: usize, v: &[f64; 6], g: &[f64; 6]) -> [f64; 6] {
    let w = ReducedCoordinates::weights(d);
    let n: [f64; 6] = std::array::from_fn(|k| w[k] * v[k]);
    let c = dot(g, &n) / dot(&n, &n);
    std::array::from_fn(|k| g[k] - c * n[k])
}

/// Multiplier and stationarity residual at a point of the ellipsoid;
/// `None` where `h` is not differentiable.
pub fn reduced_multiplier(c: &ReducedCoordinates) -> Option<(f64, f64)> {
    let g = c.grad_h()?;
    let w = ReducedCoordinates::weights(c.d);
    let v = c.to_vec();
    let n: [f64; 6] = std::array::from_fn(|k| 2.0 * w[k] * v[k]);
    let mu = dot(&g, &n) / dot(&n, &n);
    let r: [f64; 6] = std::array::from_fn(|k| g[k] - mu * n[k]);
    Some((mu, dot(&r, &r).sqrt()))
}

/// One ascent run from the start drawn on stream `index` of `seed`.
pub fn maximize_reduced(d: usize, seed: u64, index: u64) -> ReducedOptimum {
    let mut rng = stream(seed, index);
    let mut v = retract(d, std::array::from_fn(|_| StandardNormal.sample(&mut rng)));
    let mut value = ReducedCoordinates::from_vec(d, v).h();
    let mut step = 0.1;
    let mut stationarity = f64::INFINITY;
    let mut iterations = 0;
    while iterations < MAX_ITERS {
        iterations += 1;
        let Some(g) = ReducedCoordinates::from_vec(d, v).grad_h() else { break };
        let t = tangent(d, &v, &g);
        let tn2 = dot(&t, &t);
        stationarity = tn2.sqrt() / dot(&g, &g).sqrt();
        if stationarity <= STOP_TOL {
            break;
        }
        let mut accepted = false;
        while step > 1e-16 {
            let cand = retract(d, std::array::from_fn(|k| v[k] + step * t[k]));
            let hv = ReducedCoordinates::from_vec(d, cand).h();
            if hv >= value + ARMIJO_C * step * tn2 {
                v = cand;
                value = hv;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
        step = (step * 2.0).min(1e4);
    }
    let converged = stationarity <= CONVERGED_TOL;
    let coords = ReducedCoordinates::from_vec(d, v);
    let h = coords.h();
    let (mu, residual) = reduced_multiplier(&coords).unwrap_or((f64::NAN, f64::NAN));
    let ratio = (mu - 2.0 * d as f64 * h).abs() / mu;
    ReducedOptimum { coords, h, mu, residual, ratio, iterations, converged }
}

/// `runs` independent reduced maximizations, in stream order.
pub fn reduced_runs(d: usize, runs: usize, seed: u64) -> Vec<ReducedOptimum> {
    map_indexed(runs, |i| maximize_reduced(d, seed, i as u64))
}
