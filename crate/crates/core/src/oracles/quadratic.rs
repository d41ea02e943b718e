//! Quadratic programs on an ellipsoid cut by linear constraints, solved
//! exactly by reduction to a symmetric eigenproblem.
//!
//! Variables are `z = (x, y)` with `x ∈ Rᴺ`, `y ∈ Rᴹ`. The problem is
//! `max xᵀQx + Σξᵢyᵢ²` subject to `Cz = 0` and `Στᵢxᵢ² + Σωᵢyᵢ² = r`.
//! With `z = R^{-1/2}w`, `R = diag(τ, ω)`, and `w = Ns` for an orthonormal
//! null-space basis `N` of `CR^{-1/2}`, the optimum is `r λ_max` of
//! `NᵀR^{-1/2}PR^{-1/2}N`, attained on the top eigenspace.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigs, null_space, svd, ComplexMatrix, C64};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadraticInstance {
    /// Symmetric `N × N`.
    pub q: Vec<Vec<f64>>,
    /// Each row has length `N + M` and acts on `(x, y)`.
    pub constraints: Vec<Vec<f64>>,
    pub tau: Vec<f64>,
    pub omega: Vec<f64>,
    pub xi: Vec<f64>,
    pub r: f64,
}

/// Top eigenspace of the reduced problem in original coordinates.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub value: f64,
    /// Basis of the maximizer directions `z` (each scaled onto the ellipsoid).
    pub maximizers: Vec<Vec<f64>>,
    pub n: usize,
    pub m: usize,
}

const EIGEN_CLUSTER: f64 = 1e-10;

impl QuadraticInstance {
    pub fn n(&self) -> usize {
        self.tau.len()
    }

    pub fn m(&self) -> usize {
        self.omega.len()
    }

    pub fn validate(&self) -> Result<()> {
        let (n, m) = (self.n(), self.m());
        if self.q.len() != n || self.q.iter().any(|row| row.len() != n) {
            return Err(Error::Dimension(format!("Q must be {n}x{n}")));
        }
        if self.xi.len() != m {
            return Err(Error::Dimension(format!("xi must have {m} entries")));
        }
        if self.constraints.iter().any(|c| c.len() != n + m) {
            return Err(Error::Dimension(format!("constraints must have {} entries", n + m)));
        }
        for i in 0..n {
            for j in 0..i {
                if (self.q[i][j] - self.q[j][i]).abs() > 1e-12 * (1.0 + self.q[i][j].abs()) {
                    return Err(Error::InvalidArgument("Q must be symmetric".into()));
                }
            }
        }
        if self.tau.iter().chain(&self.omega).any(|&v| !(v > 0.0)) || !(self.r > 0.0) {
            return Err(Error::InvalidArgument("tau, omega and r must be positive".into()));
        }
        Ok(())
    }

    /// `max ξᵢ/ωᵢ`.
    pub fn eta(&self) -> f64 {
        self.xi.iter().zip(&self.omega).map(|(x, w)| x / w).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Objective at `z = (x, y)`.
    pub fn objective(&self, z: &[f64]) -> f64 {
        let n = self.n();
        let mut v = 0.0;
        for i in 0..n {
            for j in 0..n {
                v += z[i] * self.q[i][j] * z[j];
            }
        }
        v + self.xi.iter().zip(&z[n..]).map(|(x, y)| x * y * y).sum::<f64>()
    }

    pub(crate) fn radial_weights(&self) -> Vec<f64> {
        self.tau.iter().chain(&self.omega).copied().collect()
    }

    /// Orthonormal null-space basis of `CR^{-1/2}` in `w` coordinates.
    pub(crate) fn feasible_basis(&self) -> Result<Vec<Vec<f64>>> {
        let k = self.n() + self.m();
        let inv_sqrt: Vec<f64> = self.radial_weights().iter().map(|v| 1.0 / v.sqrt()).collect();
        let c = ComplexMatrix::from_fn(self.constraints.len(), k, |i, j| C64::new(self.constraints[i][j] * inv_sqrt[j], 0.0));
        let basis = null_space(&c, 1e-12);
        if basis.is_empty() {
            return Err(Error::Infeasible("linear constraints leave only the origin".into()));
        }
        Ok(real_basis(&basis))
    }

    pub fn reduce(&self) -> Result<Reduction> {
        self.validate()?;
        let (n, m) = (self.n(), self.m());
        let k = n + m;
        let inv_sqrt: Vec<f64> = self.radial_weights().iter().map(|v| 1.0 / v.sqrt()).collect();
        let p = |i: usize, j: usize| -> f64 {
            let raw = if i < n && j < n {
                self.q[i][j]
            } else if i == j {
                self.xi[i - n]
            } else {
                0.0
            };
            raw * inv_sqrt[i] * inv_sqrt[j]
        };
        let basis = self.feasible_basis()?;
        let dim = basis.len();
        let reduced = ComplexMatrix::from_fn(dim, dim, |a, b| {
            let mut s = 0.0;
            for i in 0..k {
                if basis[a][i] == 0.0 {
                    continue;
                }
                for j in 0..k {
                    s += basis[a][i] * p(i, j) * basis[b][j];
                }
            }
            C64::new(s, 0.0)
        });
        let eig = hermitian_eigs(&reduced)?;
        let top = eig.values[0];
        let scale = eig.values.iter().fold(1.0_f64, |acc, v| acc.max(v.abs()));
        let top_dim = eig.values.iter().take_while(|&&v| top - v <= EIGEN_CLUSTER * scale).count();
        // real eigenbasis of the top eigenspace
        let complex: Vec<Vec<C64>> = (0..top_dim).map(|t| eig.vector(t)).collect();
        let coeffs = real_basis(&complex);
        let maximizers = coeffs
            .iter()
            .map(|s| {
                let mut z = vec![0.0; k];
                for (sa, b) in s.iter().zip(&basis) {
                    for i in 0..k {
                        z[i] += sa * b[i];
                    }
                }
                let mut z: Vec<f64> = z.iter().zip(&inv_sqrt).map(|(w, c)| w * c).collect();
                let norm: f64 = z.iter().zip(self.radial_weights()).map(|(v, w)| w * v * v).sum();
                let s = (self.r / norm).sqrt();
                z.iter_mut().for_each(|v| *v *= s);
                z
            })
            .collect();
        Ok(Reduction { value: self.r * top, maximizers, n, m })
    }
}

/// Real orthonormal basis of the real span of the real and imaginary parts
/// (eigenvectors of a real symmetric matrix may carry complex phases).
fn real_basis(vs: &[Vec<C64>]) -> Vec<Vec<f64>> {
    if vs.is_empty() {
        return Vec::new();
    }
    let len = vs[0].len();
    let cols: Vec<Vec<C64>> = vs
        .iter()
        .flat_map(|v| [v.iter().map(|z| C64::new(z.re, 0.0)).collect(), v.iter().map(|z| C64::new(z.im, 0.0)).collect()])
        .collect();
    let mat = ComplexMatrix::from_columns(&cols);
    let dec = svd(&mat);
    let smax = dec.s.first().copied().unwrap_or(0.0);
    (0..vs.len().min(len))
        .filter(|&j| dec.s[j] > 1e-8 * smax)
        .map(|j| dec.left(j).iter().map(|z| z.re).collect())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dichotomy {
    MaxEqualsEtaR,
    YStarZero,
    Both,
    /// Neither alternative holds: a counterexample.
    Neither,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DichotomyReport {
    pub value: f64,
    pub eta_r: f64,
    pub verdict: Dichotomy,
}

impl DichotomyReport {
    pub fn holds(&self) -> bool {
        self.verdict != Dichotomy::Neither
    }
}

/// Smallest singular value of the `y` block over the maximizer basis,
/// relative to the largest entry; zero means some maximizer has `y = 0`.
fn y_rank_gap(red: &Reduction) -> f64 {
    let k = red.maximizers.len();
    if k > red.m {
        return 0.0;
    }
    let ys = ComplexMatrix::from_fn(red.m, k, |i, j| C64::new(red.maximizers[j][red.n + i], 0.0));
    let scale = red.maximizers.iter().flat_map(|z| z.iter()).fold(0.0_f64, |a, v| a.max(v.abs()));
    svd(&ys).s[k - 1] / scale.max(f64::MIN_POSITIVE)
}

pub fn dichotomy_check(inst: &QuadraticInstance) -> Result<DichotomyReport> {
    if inst.m() == 0 {
        return Err(Error::InvalidArgument("the dichotomy needs at least one y variable".into()));
    }
    if inst.constraints.iter().any(|c| c[inst.n()..].iter().any(|&v| v != 0.0)) {
        return Err(Error::Hypothesis("linear constraints may only involve x".into()));
    }
    let red = inst.reduce()?;
    let eta_r = inst.eta() * inst.r;
    let value_match = (red.value - eta_r).abs() <= 1e-9 * (1.0 + eta_r.abs());
    let y_zero = y_rank_gap(&red) <= 1e-9;
    let verdict = match (value_match, y_zero) {
        (true, true) => Dichotomy::Both,
        (true, false) => Dichotomy::MaxEqualsEtaR,
        (false, true) => Dichotomy::YStarZero,
        (false, false) => Dichotomy::Neither,
    };
    Ok(DichotomyReport { value: red.value, eta_r, verdict })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EqualYReport {
    pub value: f64,
    pub maximizer_dim: usize,
    /// Largest `|yᵢ − yⱼ|` over the maximizer basis.
    pub y_spread: f64,
    pub holds: bool,
}

impl QuadraticInstance {
    /// `max xᵀQx` s.t. `⟨c, x⟩ + Σyᵢ = 0`, `⟨dᵢ, x⟩ = 0`, `Στᵢxᵢ² + Σyᵢ² = r`.
    pub fn equal_y(q: Vec<Vec<f64>>, c: &[f64], ds: &[Vec<f64>], tau: Vec<f64>, m: usize, r: f64) -> Self {
        let mut constraints = Vec::with_capacity(1 + ds.len());
        let mut first = c.to_vec();
        first.extend(std::iter::repeat_n(1.0, m));
        constraints.push(first);
        for d in ds {
            let mut row = d.clone();
            row.extend(std::iter::repeat_n(0.0, m));
            constraints.push(row);
        }
        Self { q, constraints, tau, omega: vec![1.0; m], xi: vec![0.0; m], r }
    }

    fn has_equal_y_shape(&self) -> bool {
        let n = self.n();
        let Some((first, rest)) = self.constraints.split_first() else { return false };
        first[n..].iter().all(|&v| v == 1.0)
            && rest.iter().all(|c| c[n..].iter().all(|&v| v == 0.0))
            && self.omega.iter().all(|&w| w == 1.0)
            && self.xi.iter().all(|&x| x == 0.0)
    }
}

pub fn equal_y_check(inst: &QuadraticInstance) -> Result<EqualYReport> {
    if !inst.has_equal_y_shape() {
        return Err(Error::Hypothesis("instance lacks the summed-y constraint structure".into()));
    }
    let red = inst.reduce()?;
    if red.value <= 1e-12 * inst.r {
        return Err(Error::Hypothesis("objective is not positive anywhere on the feasible set".into()));
    }
    let mut spread = 0.0_f64;
    let mut scale = 0.0_f64;
    for z in &red.maximizers {
        let y = &z[red.n..];
        scale = z.iter().fold(scale, |a, v| a.max(v.abs()));
        for a in y {
            for b in y {
                spread = spread.max((a - b).abs());
            }
        }
    }
    let holds = spread <= 1e-9 * scale.max(1e-300) || red.m <= 1;
    Ok(EqualYReport { value: red.value, maximizer_dim: red.maximizers.len(), y_spread: spread, holds })
}

fn gaussian_vec<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<f64> {
    (0..len).map(|_| rand_distr::Distribution::<f64>::sample(&rand_distr::StandardNormal, rng)).collect()
}

fn symmetric<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Vec<f64>> {
    let g: Vec<Vec<f64>> = (0..n).map(|_| gaussian_vec(n, rng)).collect();
    (0..n).map(|i| (0..n).map(|j| 0.5 * (g[i][j] + g[j][i])).collect()).collect()
}

/// Random instance with `N ≤ max_n`, `1 ≤ M ≤ max_m` and constraints on `x` only.
pub fn random_dichotomy_instance<R: Rng + ?Sized>(max_n: usize, max_m: usize, rng: &mut R) -> QuadraticInstance {
    let n = rng.random_range(1..=max_n);
    let m = rng.random_range(1..=max_m);
    let n_con = rng.random_range(0..n);
    let constraints = (0..n_con)
        .map(|_| {
            let mut c = gaussian_vec(n, rng);
            c.extend(std::iter::repeat_n(0.0, m));
            c
        })
        .collect();
    QuadraticInstance {
        q: symmetric(n, rng),
        constraints,
        tau: (0..n).map(|_| rng.random_range(0.2..2.0)).collect(),
        omega: (0..m).map(|_| rng.random_range(0.2..2.0)).collect(),
        xi: gaussian_vec(m, rng),
        r: rng.random_range(0.1..2.0),
    }
}

/// Random summed-y instance with `N ≤ max_n`, `1 ≤ M ≤ max_m`.
pub fn random_equal_y_instance<R: Rng + ?Sized>(max_n: usize, max_m: usize, rng: &mut R) -> QuadraticInstance {
    let n = rng.random_range(1..=max_n);
    let m = rng.random_range(1..=max_m);
    let n_d = rng.random_range(0..n);
    let ds: Vec<Vec<f64>> = (0..n_d).map(|_| gaussian_vec(n, rng)).collect();
    let tau = (0..n).map(|_| rng.random_range(0.2..2.0)).collect();
    let r = rng.random_range(0.1..2.0);
    QuadraticInstance::equal_y(symmetric(n, rng), &gaussian_vec(n, rng), &ds, tau, m, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn diag(v: &[f64]) -> Vec<Vec<f64>> {
        (0..v.len()).map(|i| (0..v.len()).map(|j| if i == j { v[i] } else { 0.0 }).collect()).collect()
    }

    #[test]
    fn penalized_y_gives_zero_branch() {
        let inst = QuadraticInstance {
            q: diag(&[1.0, 0.5]),
            constraints: vec![],
            tau: vec![1.0, 1.0],
            omega: vec![1.0, 1.0],
            xi: vec![-50.0, -80.0],
            r: 1.0,
        };
        let rep = dichotomy_check(&inst).unwrap();
        assert_eq!(rep.verdict, Dichotomy::YStarZero);
        assert!((rep.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pure_y_optimum_gives_eta_r() {
        let inst = QuadraticInstance {
            q: diag(&[0.0, 0.0]),
            constraints: vec![],
            tau: vec![1.0, 1.0],
            omega: vec![2.0, 1.0],
            xi: vec![3.0, 1.0],
            r: 0.5,
        };
        let rep = dichotomy_check(&inst).unwrap();
        assert_eq!(rep.verdict, Dichotomy::MaxEqualsEtaR);
        assert!((rep.value - 0.75).abs() < 1e-12);
    }

    #[test]
    fn dichotomy_needs_y() {
        let inst = QuadraticInstance { q: diag(&[1.0]), constraints: vec![], tau: vec![1.0], omega: vec![], xi: vec![], r: 1.0 };
        assert!(dichotomy_check(&inst).is_err());
    }

    #[test]
    fn infeasible_constraints_rejected() {
        let inst = QuadraticInstance {
            q: diag(&[1.0]),
            constraints: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            tau: vec![1.0],
            omega: vec![1.0],
            xi: vec![0.0],
            r: 1.0,
        };
        assert!(matches!(inst.reduce(), Err(Error::Infeasible(_))));
    }

    #[test]
    fn maximizers_are_feasible_and_optimal() {
        let mut rng = ChaCha8Rng::seed_from_u64(70);
        for _ in 0..200 {
            let inst = random_dichotomy_instance(5, 3, &mut rng);
            let red = inst.reduce().unwrap();
            for z in &red.maximizers {
                for c in &inst.constraints {
                    let s: f64 = c.iter().zip(z).map(|(a, b)| a * b).sum();
                    assert!(s.abs() < 1e-10);
                }
                let norm: f64 = z.iter().zip(inst.radial_weights()).map(|(v, w)| w * v * v).sum();
                assert!((norm - inst.r).abs() < 1e-12);
                assert!((inst.objective(z) - red.value).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn single_y_is_vacuous() {
        let inst = QuadraticInstance::equal_y(diag(&[1.0, 2.0]), &[0.3, 0.1], &[], vec![1.0, 1.0], 1, 1.0);
        assert!(equal_y_check(&inst).unwrap().holds);
    }

    #[test]
    fn symmetric_instance_has_equal_y() {
        let inst = QuadraticInstance::equal_y(diag(&[1.0, -0.5]), &[1.0, 2.0], &[], vec![1.0, 2.0], 3, 1.0);
        let rep = equal_y_check(&inst).unwrap();
        assert!(rep.holds, "{rep:?}");
    }

    #[test]
    fn equal_y_rejects_nonpositive_objective() {
        let inst = QuadraticInstance::equal_y(diag(&[-1.0, -2.0]), &[1.0, 0.0], &[], vec![1.0, 1.0], 2, 1.0);
        assert!(matches!(equal_y_check(&inst), Err(Error::Hypothesis(_))));
        let mut broken = QuadraticInstance::equal_y(diag(&[1.0]), &[1.0], &[], vec![1.0], 2, 1.0);
        broken.xi[0] = 1.0;
        assert!(equal_y_check(&broken).is_err());
    }

    #[test]
    fn scaling_r_scales_value() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for _ in 0..50 {
            let inst = random_dichotomy_instance(4, 3, &mut rng);
            let mut scaled = inst.clone();
            scaled.r *= 9.0;
            let (a, b) = (inst.reduce().unwrap().value, scaled.reduce().unwrap().value);
            assert!((9.0 * a - b).abs() < 1e-10 * (1.0 + b.abs()));
        }
    }
}
