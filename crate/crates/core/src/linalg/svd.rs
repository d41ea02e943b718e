//! One-sided (Hestenes) Jacobi singular value decomposition.
//!
//! Columns of a working copy are pairwise rotated until mutually orthogonal;
//! the column norms are then the singular values. At the sizes used here
//! (at most a few hundred rows) this is accurate to a few ulps relative to
//! the largest singular value.

use super::matrix::{orthonormalize, ComplexMatrix, C64, ZERO};

const MAX_SWEEPS: usize = 80;
const ORTH_TOL: f64 = 1e-15;

/// Thin SVD `M = U diag(s) V^H` with `s` nonincreasing.
#[derive(Clone, Debug)]
pub struct Svd {
    /// `rows x r` with orthonormal columns, `r = min(rows, cols)`.
    pub u: ComplexMatrix,
    pub s: Vec<f64>,
    /// `cols x r` with orthonormal columns.
    pub v: ComplexMatrix,
}

impl Svd {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let us = ComplexMatrix::from_fn(self.u.rows(), self.u.cols(), |i, j| self.u[(i, j)] * self.s[j]);
        us.matmul(&self.v.adjoint()).expect("conformant factors")
    }

    pub fn left(&self, k: usize) -> Vec<C64> {
        self.u.column(k)
    }

    pub fn right(&self, k: usize) -> Vec<C64> {
        self.v.column(k)
    }
}

pub fn svd(m: &ComplexMatrix) -> Svd {
    if m.rows() >= m.cols() {
        tall_svd(m)
    } else {
        let t = tall_svd(&m.adjoint());
        Svd { u: t.v, s: t.s, v: t.u }
    }
}

fn tall_svd(m: &ComplexMatrix) -> Svd {
    let rows = m.rows();
    let n = m.cols();
    // column-major working storage
    let mut w: Vec<Vec<C64>> = (0..n).map(|j| m.column(j)).collect();
    let mut v: Vec<Vec<C64>> = (0..n)
        .map(|j| {
            let mut e = vec![ZERO; n];
            e[j] = C64::new(1.0, 0.0);
            e
        })
        .collect();

    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let (alpha, beta, gamma) = gram(&w[p], &w[q]);
                let g = gamma.norm();
                if g == 0.0 || g <= ORTH_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let e = phase.conj();
                rotate(&mut w, p, q, c, s, e);
                rotate(&mut v, p, q, c, s, e);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = w.iter().map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]));

    let s: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let smax = s.first().copied().unwrap_or(0.0);
    let mut u_cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    for &j in &order {
        let nj = norms[j];
        if nj > smax * 1e-14 && nj > 0.0 {
            u_cols.push(w[j].iter().map(|z| z / nj).collect());
        } else {
            u_cols.push(vec![ZERO; rows]);
        }
    }
    // numerically-null columns get completed to an orthonormal set
    orthonormalize(&mut u_cols);
    let v_cols: Vec<Vec<C64>> = order.iter().map(|&j| v[j].clone()).collect();
    Svd {
        u: ComplexMatrix::from_columns(&u_cols),
        s,
        v: ComplexMatrix::from_columns(&v_cols),
    }
}

#[inline]
fn gram(a: &[C64], b: &[C64]) -> (f64, f64, C64) {
    let mut alpha = 0.0;
    let mut beta = 0.0;
    let mut gamma = ZERO;
    for (x, y) in a.iter().zip(b) {
        alpha += x.norm_sqr();
        beta += y.norm_sqr();
        gamma += x.conj() * y;
    }
    (alpha, beta, gamma)
}

/// `[x_p, x_q] <- [x_p, e x_q] [[c, s], [-s, c]]`.
#[inline]
fn rotate(cols: &mut [Vec<C64>], p: usize, q: usize, c: f64, s: f64, e: C64) {
    let (head, tail) = cols.split_at_mut(q);
    let xp = &mut head[p];
    let xq = &mut tail[0];
    for (a, b) in xp.iter_mut().zip(xq.iter_mut()) {
        let bp = *b * e;
        let new_a = *a * c - bp * s;
        let new_b = *a * s + bp * c;
        *a = new_a;
        *b = new_b;
    }
}

/// Singular values only, nonincreasing.
pub fn singular_values_all(m: &ComplexMatrix) -> Vec<f64> {
    svd(m).s
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn reconstructs_random_rectangular() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &(r, c) in &[(5, 5), (7, 3), (3, 7), (1, 4), (16, 16)] {
            let m = ComplexMatrix::random_gaussian(r, c, &mut rng);
            let d = svd(&m);
            let err = (&d.reconstruct() - &m).frobenius_norm();
            assert!(err < 1e-13 * m.frobenius_norm().max(1.0), "{r}x{c}: {err}");
            assert!(d.u.adjoint().matmul(&d.u).unwrap().max_abs_diff(&ComplexMatrix::identity(d.u.cols())) < 1e-13);
            assert!(d.v.adjoint().matmul(&d.v).unwrap().max_abs_diff(&ComplexMatrix::identity(d.v.cols())) < 1e-13);
            assert!(d.s.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn zero_matrix_has_orthonormal_factors() {
        let d = svd(&ComplexMatrix::zeros(4, 4));
        assert!(d.s.iter().all(|&x| x == 0.0));
        assert!(d.u.unitary_deviation() < 1e-14);
    }

    #[test]
    fn rank_one() {
        let m = ComplexMatrix::from_fn(4, 4, |i, j| C64::new((i + 1) as f64 * (j + 1) as f64, 0.0));
        let d = svd(&m);
        assert!((d.s[0] - 30.0).abs() < 1e-12);
        assert!(d.s[1..].iter().all(|&x| x < 1e-12));
        assert!(d.u.unitary_deviation() < 1e-12);
    }
}
