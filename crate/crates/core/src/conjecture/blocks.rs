use serde::{Deserialize, Serialize};

use super::point::FeasiblePoint;
use crate::error::{Error, Result};
use crate::linalg::{svd, SpectralSummary, C64};

/// Off-diagonal magnitude above which `A` is not treated as diagonal.
pub const DIAGONAL_TOL: f64 = 1e-14;

/// Where the two largest singular values of `⊕ᵢ(aᵢI + B)` come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TopTwoOrigin {
    SameBlock { block: usize },
    DifferentBlocks { first: usize, second: usize },
}

#[derive(Clone, Debug)]
pub struct BlockSpectrum {
    pub summary: SpectralSummary,
    pub origin: TopTwoOrigin,
}

/// Merged singular values of the blocks `aᵢI + B`, each tagged with `i`.
/// Ties are broken by block index, then by position inside the block.
pub fn block_spectrum(p: &FeasiblePoint) -> Result<BlockSpectrum> {
    let d = p.d();
    let a = p.a();
    let off = (0..d)
        .flat_map(|i| (0..d).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| a[(i, j)].norm())
        .fold(0.0, f64::max);
    if off >= DIAGONAL_TOL {
        return Err(Error::InvalidArgument(format!("A is not diagonal (off-diagonal {off:.3e})")));
    }
    if d < 2 {
        return Err(Error::Dimension("block spectrum needs d >= 2".into()));
    }

    let mut entries: Vec<(f64, usize, Vec<C64>, Vec<C64>)> = Vec::with_capacity(d * d);
    for i in 0..d {
        let mut block = p.b().clone();
        for r in 0..d {
            block[(r, r)] += a[(i, i)];
        }
        let dec = svd(&block);
        for k in 0..d {
            entries.push((dec.s[k], i, lift(i, d, &dec.left(k)), lift(i, d, &dec.right(k))));
        }
    }
    entries.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)));

    let origin = if entries[0].1 == entries[1].1 {
        TopTwoOrigin::SameBlock { block: entries[0].1 }
    } else {
        TopTwoOrigin::DifferentBlocks { first: entries[0].1, second: entries[1].1 }
    };
    let summary = SpectralSummary {
        singular_values: entries.iter().map(|e| e.0).collect(),
        block_index: Some(entries.iter().map(|e| e.1).collect()),
        left: entries.iter().take(2).map(|e| e.2.clone()).collect(),
        right: entries.iter().take(2).map(|e| e.3.clone()).collect(),
    };
    Ok(BlockSpectrum { summary, origin })
}

// e_i ⊗ v
fn lift(i: usize, d: usize, v: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); d * d];
    out[i * d..(i + 1) * d].copy_from_slice(v);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjecture::extremal::extremal_point;
    use crate::conjecture::point::{assemble_x, project_to_feasible};
    use crate::linalg::{singular_values_all, ComplexMatrix};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn extremal_top_pair_shares_first_block() {
        let bs = block_spectrum(&extremal_point(4).unwrap()).unwrap();
        assert_eq!(bs.origin, TopTwoOrigin::SameBlock { block: 0 });
        assert!((bs.summary.singular_values[0] - 0.5).abs() < 1e-15);
        assert!((bs.summary.singular_values[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn merged_values_match_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..20 {
            let a = ComplexMatrix::real_diag(&[0.9, 0.1, -0.3, -0.7]);
            let b = ComplexMatrix::random_gaussian(4, 4, &mut rng).scale_real(0.02);
            let p = project_to_feasible(&a, &b).unwrap();
            let bs = block_spectrum(&p).unwrap();
            let dense = singular_values_all(&assemble_x(&p));
            for (x, y) in bs.summary.singular_values.iter().zip(&dense) {
                assert!((x - y).abs() < 1e-12);
            }
            // dominant a₁ pushes both top values into block 0
            let x = assemble_x(&p);
            let u = &bs.summary.right[0];
            let xu = x.mul_vec(u);
            let norm: f64 = xu.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            assert!((norm - bs.summary.singular_values[0]).abs() < 1e-12);
            assert_eq!(bs.origin, TopTwoOrigin::SameBlock { block: 0 });
        }
    }

    #[test]
    fn zero_b_gives_repeated_diagonal() {
        let a = ComplexMatrix::real_diag(&[0.3, 0.1, -0.4]);
        let p = project_to_feasible(&a, &ComplexMatrix::zeros(3, 3)).unwrap();
        let bs = block_spectrum(&p).unwrap();
        let idx = bs.summary.block_index.unwrap();
        for (v, i) in bs.summary.singular_values.iter().zip(&idx) {
            assert!((v - p.a()[(*i, *i)].norm()).abs() < 1e-15);
        }
        for i in 0..3 {
            assert_eq!(idx.iter().filter(|&&k| k == i).count(), 3);
        }
    }

    #[test]
    fn rejects_non_diagonal_a() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let p = project_to_feasible(&ComplexMatrix::random_gaussian(3, 3, &mut rng), &ComplexMatrix::zeros(3, 3))
            .unwrap();
        assert!(block_spectrum(&p).is_err());
    }
}
