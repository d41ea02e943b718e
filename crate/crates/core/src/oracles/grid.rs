//! Brute-force optimum of a [`QuadraticInstance`] for small dimensions:
//! a uniform grid over the cube of feasible-subspace coordinates, each grid
//! point pushed radially onto the sphere, followed by projected-gradient
//! polishing of the best point.

use super::quadratic::QuadraticInstance;
use crate::error::{Error, Result};

const POLISH_ITERS: usize = 5000;

/// Best objective found; `resolution` is the grid spacing in units of `√r`.
pub fn grid_optimum(inst: &QuadraticInstance, resolution: f64) -> Result<f64> {
    inst.validate()?;
    if !(resolution > 0.0) {
        return Err(Error::InvalidArgument("resolution must be positive".into()));
    }
    let basis = inst.feasible_basis()?;
    let dim = basis.len();
    if dim > 4 {
        return Err(Error::InvalidArgument(format!("grid search limited to 4 free dimensions, got {dim}")));
    }
    let k = inst.n() + inst.m();
    let inv_sqrt: Vec<f64> = inst.radial_weights().iter().map(|v| 1.0 / v.sqrt()).collect();
    let radius = inst.r.sqrt();
    let eval = |s: &[f64]| -> f64 {
        let norm = s.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            return f64::NEG_INFINITY;
        }
        let mut z = vec![0.0; k];
        for (sa, b) in s.iter().zip(&basis) {
            for i in 0..k {
                z[i] += sa * b[i];
            }
        }
        let scale = radius / norm;
        for i in 0..k {
            z[i] *= inv_sqrt[i] * scale;
        }
        inst.objective(&z)
    };

    let steps = (2.0 / resolution).ceil() as usize;
    let coord = |i: usize| -1.0 + 2.0 * i as f64 / steps as f64;
    let mut best = f64::NEG_INFINITY;
    let mut best_s = vec![0.0; dim];
    let mut idx = vec![0usize; dim];
    let mut s = vec![0.0; dim];
    'grid: loop {
        for (v, &i) in s.iter_mut().zip(&idx) {
            *v = coord(i);
        }
        let v = eval(&s);
        if v > best {
            best = v;
            best_s.clone_from(&s);
        }
        for slot in idx.iter_mut() {
            *slot += 1;
            if *slot <= steps {
                continue 'grid;
            }
            *slot = 0;
        }
        break;
    }

    // polish on the unit sphere in s coordinates
    let norm = best_s.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut s: Vec<f64> = best_s.iter().map(|v| v / norm).collect();
    let mut value = eval(&s);
    let mut step = 0.1;
    let h = 1e-7;
    for _ in 0..POLISH_ITERS {
        let g: Vec<f64> = (0..dim)
            .map(|i| {
                let mut up = s.clone();
                let mut dn = s.clone();
                up[i] += h;
                dn[i] -= h;
                (eval(&up) - eval(&dn)) / (2.0 * h)
            })
            .collect();
        let radial: f64 = g.iter().zip(&s).map(|(a, b)| a * b).sum();
        let t: Vec<f64> = g.iter().zip(&s).map(|(a, b)| a - radial * b).collect();
        let tn = t.iter().map(|v| v * v).sum::<f64>().sqrt();
        if tn < 1e-12 {
            break;
        }
        let mut moved = false;
        while step > 1e-14 {
            let cand: Vec<f64> = s.iter().zip(&t).map(|(a, b)| a + step * b).collect();
            let cn = cand.iter().map(|v| v * v).sum::<f64>().sqrt();
            let cand: Vec<f64> = cand.iter().map(|v| v / cn).collect();
            let cv = eval(&cand);
            if cv > value {
                s = cand;
                value = cv;
                moved = true;
                step *= 2.0;
                break;
            }
            step *= 0.5;
        }
        if !moved {
            break;
        }
    }
    Ok(value.max(best))
}
