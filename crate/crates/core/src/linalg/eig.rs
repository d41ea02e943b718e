//! Cyclic Jacobi eigensolver for complex Hermitian matrices, plus the
//! normal-matrix diagonalization built on top of it.

use super::matrix::{ComplexMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Relative Hermitian tolerance accepted by [`hermitian_eigs`].
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Eigen-decomposition `M = V diag(values) V^H`, values nonincreasing.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.vectors.column(k)
    }
}

pub fn hermitian_eigs(m: &ComplexMatrix) -> Result<HermitianEigen> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL * m.frobenius_norm() {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(jacobi_eigen(m))
}

/// Jacobi sweeps on the Hermitian part of `m`; no tolerance check.
pub(crate) fn jacobi_eigen(m: &ComplexMatrix) -> HermitianEigen {
    let n = m.rows();
    let mut h = ComplexMatrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);
    let fro = h.frobenius_norm();

    for _sweep in 0..MAX_SWEEPS {
        if h.off_diagonal_norm() <= 1e-16 * fro {
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let hpq = h[(p, q)];
                let g = hpq.norm();
                if g == 0.0 {
                    continue;
                }
                let hpp = h[(p, p)].re;
                let hqq = h[(q, q)].re;
                if g <= 1e-18 * (hpp.abs() * hqq.abs()).sqrt() {
                    h[(p, q)] = ZERO;
                    h[(q, p)] = ZERO;
                    continue;
                }
                rotated = true;
                let e = (hpq / g).conj();
                let tau = (hqq - hpp) / (2.0 * g);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                // H <- H J with J = diag(1, e) [[c, s], [-s, c]] on (p, q)
                for k in 0..n {
                    let a = h[(k, p)];
                    let b = h[(k, q)] * e;
                    h[(k, p)] = a * c - b * s;
                    h[(k, q)] = a * s + b * c;
                    let a = v[(k, p)];
                    let b = v[(k, q)] * e;
                    v[(k, p)] = a * c - b * s;
                    v[(k, q)] = a * s + b * c;
                }
                // H <- J^H H
                let ec = e.conj();
                for k in 0..n {
                    let a = h[(p, k)];
                    let b = h[(q, k)] * ec;
                    h[(p, k)] = a * c - b * s;
                    h[(q, k)] = a * s + b * c;
                }
                h[(p, q)] = ZERO;
                h[(q, p)] = ZERO;
                h[(p, p)] = C64::new(h[(p, p)].re, 0.0);
                h[(q, q)] = C64::new(h[(q, q)].re, 0.0);
            }
        }
        if !rotated {
            break;
        }
    }

    let raw: Vec<f64> = (0..n).map(|i| h[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| raw[b].total_cmp(&raw[a]));
    let values = order.iter().map(|&i| raw[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    HermitianEigen { values, vectors }
}

/// Unitary diagonalization `M = U diag(eigenvalues) U^H` of a normal matrix.
#[derive(Clone, Debug)]
pub struct NormalDiagonalization {
    pub unitary: ComplexMatrix,
    pub eigenvalues: Vec<C64>,
}

// irrational weight mixing the Hermitian and skew parts
const MIX: f64 = 0.618_033_988_749_894_9;

/// Diagonalizes a normal matrix through the Hermitian pencil `H + c K`
/// where `M = H + iK`. Returns `None` when the result does not reproduce
/// `M` to `1e-10 ‖M‖_F` (non-normal input, or an unlucky eigenvalue
/// collision in the pencil); callers fall back to dense paths.
pub fn diagonalize_normal(m: &ComplexMatrix) -> Option<NormalDiagonalization> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let fro = m.frobenius_norm();
    if fro == 0.0 {
        return Some(NormalDiagonalization { unitary: ComplexMatrix::identity(n), eigenvalues: vec![ZERO; n] });
    }
    let i = C64::new(0.0, 1.0);
    let mix = ComplexMatrix::from_fn(n, n, |r, c| {
        let a = m[(r, c)];
        let b = m[(c, r)].conj();
        let herm = (a + b) * 0.5;
        let skew = (a - b) / (i * 2.0);
        herm + skew * MIX
    });
    let eig = jacobi_eigen(&mix);
    let u = eig.vectors;
    let t = u.adjoint().matmul(m).ok()?.matmul(&u).ok()?;
    if t.off_diagonal_norm() > 1e-10 * fro {
        return None;
    }
    Some(NormalDiagonalization { eigenvalues: t.diagonal(), unitary: u })
}

impl NormalDiagonalization {
    pub fn reconstruct(&self) -> ComplexMatrix {
        ComplexMatrix::diag(&self.eigenvalues).conjugate_by(&self.unitary).expect("square")
    }
}

/// Orthonormal basis of the numerical null space of `c` (rows are constraints).
pub fn null_space(c: &ComplexMatrix, rel_tol: f64) -> Vec<Vec<C64>> {
    let n = c.cols();
    if c.rows() == 0 {
        return (0..n)
            .map(|j| {
                let mut e = vec![ZERO; n];
                e[j] = ONE;
                e
            })
            .collect();
    }
    let gram = c.adjoint().matmul(c).expect("conformant");
    let eig = jacobi_eigen(&gram);
    let top = eig.values.first().copied().unwrap_or(0.0).max(0.0);
    let cut = rel_tol * top.max(f64::MIN_POSITIVE);
    (0..n).filter(|&k| eig.values[k] <= cut).map(|k| eig.vector(k)).collect()
}
