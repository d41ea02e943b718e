use serde::{Deserialize, Serialize};

use super::matrix::{ComplexMatrix, C64};
use super::svd::svd;
use crate::error::{Error, Result};

/// Kronecker product: block `(i, j)` of the result is `a[i, j] * b`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ar, ac) = (a.rows(), a.cols());
    let (br, bc) = (b.rows(), b.cols());
    let mut out = ComplexMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let aij = a[(i, j)];
            if aij.re == 0.0 && aij.im == 0.0 {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Block-diagonal assembly of square blocks.
pub fn direct_sum(blocks: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    if let Some(bad) = blocks.iter().find(|b| !b.is_square()) {
        return Err(Error::NotSquare { rows: bad.rows(), cols: bad.cols() });
    }
    let n: usize = blocks.iter().map(ComplexMatrix::rows).sum();
    let mut out = ComplexMatrix::zeros(n, n);
    let mut offset = 0;
    for b in blocks {
        let m = b.rows();
        for i in 0..m {
            for j in 0..m {
                out[(offset + i, offset + j)] = b[(i, j)];
            }
        }
        offset += m;
    }
    Ok(out)
}

fn check_bipartite(m: &ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<()> {
    let n = dim_a * dim_b;
    if m.rows() != n || m.cols() != n {
        return Err(Error::Dimension(format!(
            "expected a {n}x{n} operator for a {dim_a}x{dim_b} bipartition, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// Transpose on the first tensor factor: block `(i, j)` of the result
/// (blocks of size `dim_b`) is block `(j, i)` of `m`.
pub fn partial_transpose(m: &ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<ComplexMatrix> {
    check_bipartite(m, dim_a, dim_b)?;
    Ok(ComplexMatrix::from_fn(dim_a * dim_b, dim_a * dim_b, |r, c| {
        let (i, k) = (r / dim_b, r % dim_b);
        let (j, l) = (c / dim_b, c % dim_b);
        m[(j * dim_b + k, i * dim_b + l)]
    }))
}

/// Trace over the second factor, leaving a `dim_a x dim_a` operator.
pub fn partial_trace_second(m: &ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<ComplexMatrix> {
    check_bipartite(m, dim_a, dim_b)?;
    Ok(ComplexMatrix::from_fn(dim_a, dim_a, |i, j| {
        (0..dim_b).map(|k| m[(i * dim_b + k, j * dim_b + k)]).sum()
    }))
}

/// Trace over the first factor, leaving a `dim_b x dim_b` operator.
pub fn partial_trace_first(m: &ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<ComplexMatrix> {
    check_bipartite(m, dim_a, dim_b)?;
    Ok(ComplexMatrix::from_fn(dim_b, dim_b, |k, l| {
        (0..dim_a).map(|i| m[(i * dim_b + k, i * dim_b + l)]).sum()
    }))
}

/// Ordered singular values with optional block provenance and the top
/// singular vector pairs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectralSummary {
    pub singular_values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_index: Option<Vec<usize>>,
    #[serde(skip)]
    pub left: Vec<Vec<C64>>,
    #[serde(skip)]
    pub right: Vec<Vec<C64>>,
}

impl SpectralSummary {
    /// `σ₁² + σ₂²` (missing values count as zero).
    pub fn top_two_energy(&self) -> f64 {
        self.singular_values.iter().take(2).map(|s| s * s).sum()
    }
}

/// Top-`k` singular values of `m` with the top two singular vector pairs.
pub fn singular_values(m: &ComplexMatrix, k: usize) -> Result<SpectralSummary> {
    let r = m.rows().min(m.cols());
    if k > r {
        return Err(Error::InvalidArgument(format!("requested {k} singular values of a rank-{r} shape")));
    }
    let d = svd(m);
    let pairs = k.min(2);
    Ok(SpectralSummary {
        singular_values: d.s[..k].to_vec(),
        block_index: None,
        left: (0..pairs).map(|j| d.left(j)).collect(),
        right: (0..pairs).map(|j| d.right(j)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::{ONE, ZERO};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unit(n: usize, i: usize, j: usize) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(n, n);
        m[(i, j)] = ONE;
        m
    }

    #[test]
    fn identity_tensor_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(tensor(&i2, &i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn basis_placement() {
        let t = tensor(&unit(2, 0, 0), &unit(2, 1, 1));
        for r in 0..4 {
            for c in 0..4 {
                let expect = if (r, c) == (1, 1) { ONE } else { ZERO };
                assert_eq!(t[(r, c)], expect);
            }
        }
    }

    #[test]
    fn direct_sum_of_scalars_and_zero_blocks() {
        let a = ComplexMatrix::real_diag(&[5.0]);
        let b = ComplexMatrix::real_diag(&[7.0]);
        assert_eq!(direct_sum(&[a, b]).unwrap(), ComplexMatrix::real_diag(&[5.0, 7.0]));
        let z = direct_sum(&[ComplexMatrix::zeros(2, 2), ComplexMatrix::zeros(3, 3)]).unwrap();
        assert_eq!(z, ComplexMatrix::zeros(5, 5));
        assert!(singular_values(&z, 5).unwrap().singular_values.iter().all(|&s| s == 0.0));
    }

    #[test]
    fn direct_sum_rejects_rectangular() {
        let bad = ComplexMatrix::zeros(2, 3);
        assert!(matches!(direct_sum(&[bad]), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn partial_transpose_identity_and_involution() {
        let i4 = ComplexMatrix::identity(4);
        assert_eq!(partial_transpose(&i4, 2, 2).unwrap(), i4);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = ComplexMatrix::random_gaussian(9, 9, &mut rng);
        let twice = partial_transpose(&partial_transpose(&m, 3, 3).unwrap(), 3, 3).unwrap();
        assert_eq!(twice, m);
        assert!(partial_transpose(&m, 2, 3).is_err());
    }

    #[test]
    fn partial_transpose_of_swap_is_scaled_max_entangled_projector() {
        // F = Σ E_ij ⊗ E_ji; F^Γ = Σ E_ji ⊗ E_ji = d |Φ⟩⟨Φ|
        let d = 2;
        let mut f = ComplexMatrix::zeros(4, 4);
        for i in 0..d {
            for j in 0..d {
                f = &f + &tensor(&unit(d, i, j), &unit(d, j, i));
            }
        }
        let g = partial_transpose(&f, d, d).unwrap();
        let mut phi_proj = ComplexMatrix::zeros(4, 4);
        for i in 0..d {
            for j in 0..d {
                phi_proj[(i * d + i, j * d + j)] = C64::new(1.0 / d as f64, 0.0);
            }
        }
        assert!(g.max_abs_diff(&phi_proj.scale_real(2.0)) < 1e-15);
    }

    #[test]
    fn partial_traces_of_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = ComplexMatrix::random_gaussian(3, 3, &mut rng);
        let b = ComplexMatrix::random_gaussian(2, 2, &mut rng);
        let ab = tensor(&a, &b);
        let ta = partial_trace_second(&ab, 3, 2).unwrap();
        let tb = partial_trace_first(&ab, 3, 2).unwrap();
        assert!(ta.max_abs_diff(&a.scale(b.trace())) < 1e-13);
        assert!(tb.max_abs_diff(&b.scale(a.trace())) < 1e-13);
    }

    #[test]
    fn diagonal_singular_values() {
        let m = ComplexMatrix::real_diag(&[3.0, 1.0, 2.0]);
        let s = singular_values(&m, 3).unwrap();
        assert_eq!(s.singular_values, vec![3.0, 2.0, 1.0]);
        assert!(singular_values(&m, 4).is_err());
    }
}
