//! Minimization of `⟨ψ, Hψ⟩` over unit vectors of Schmidt rank at most two.
//!
//! With one local 2-frame fixed, every vector in `Cᵈᵃ ⊗ span(v₁, v₂)` has
//! Schmidt rank ≤ 2, so the constrained minimum over that subspace is an
//! eigenvalue problem of size `2 dᵃ`. The search alternates between the two
//! sides, re-reading the frames from a Schmidt decomposition each time.

use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigs, orthonormalize, partial_transpose, svd, ComplexMatrix, C64, ONE, ZERO};
use crate::parallel::map_indexed;
use crate::rng::{stream, StreamRng};

const MAX_ROUNDS: usize = 500;
const ROUND_TOL: f64 = 1e-15;

mod complex_list {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::linalg::C64;

    pub fn serialize<S: Serializer>(v: &[Vec<C64>; 2], s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<Vec<[f64; 2]>> = v.iter().map(|x| x.iter().map(|z| [z.re, z.im]).collect()).collect();
        pairs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Vec<C64>; 2], D::Error> {
        let pairs: [Vec<[f64; 2]>; 2] = Deserialize::deserialize(d)?;
        Ok(pairs.map(|x| x.into_iter().map(|[re, im]| C64::new(re, im)).collect()))
    }
}

/// `ψ = p₁ u₁ ⊗ v₁ + p₂ u₂ ⊗ v₂` with orthonormal pairs and `p₁ ≥ p₂ ≥ 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchmidtRank2 {
    pub p: [f64; 2],
    #[serde(with = "complex_list")]
    pub u: [Vec<C64>; 2],
    #[serde(with = "complex_list")]
    pub v: [Vec<C64>; 2],
}

impl SchmidtRank2 {
    pub fn vector(&self) -> Vec<C64> {
        let (da, db) = (self.u[0].len(), self.v[0].len());
        let mut psi = vec![ZERO; da * db];
        for k in 0..2 {
            for i in 0..da {
                for j in 0..db {
                    psi[i * db + j] += self.u[k][i] * self.v[k][j] * self.p[k];
                }
            }
        }
        psi
    }

    /// Schmidt decomposition of `ψ` truncated to two terms and renormalized.
    pub fn from_vector(psi: &[C64], da: usize, db: usize) -> Self {
        let m = ComplexMatrix::from_vec(da, db, psi.to_vec()).expect("da * db entries");
        let dec = svd(&m);
        let s0 = dec.s.first().copied().unwrap_or(0.0);
        let s1 = dec.s.get(1).copied().unwrap_or(0.0);
        let n = s0.hypot(s1).max(f64::MIN_POSITIVE);
        let conj = |v: Vec<C64>| v.into_iter().map(|z| z.conj()).collect::<Vec<_>>();
        SchmidtRank2 {
            p: [s0 / n, s1 / n],
            u: [dec.left(0), dec.left(1)],
            v: [conj(dec.right(0)), conj(dec.right(1))],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessResult {
    pub min_value: f64,
    pub argmin: SchmidtRank2,
    pub restarts_used: usize,
    /// Value at the fixed start `(e₀⊗e₀ + e₁⊗e₁)/√2`.
    pub start_value: f64,
}

fn quadratic(h: &ComplexMatrix, v: &[C64]) -> f64 {
    h.quadratic_form(v).re
}

/// `(I ⊗ V)ᴴ H (I ⊗ V)` for a `db × 2` frame, indexed `(i, k)`.
fn reduce_right(h: &ComplexMatrix, da: usize, db: usize, frame: &[Vec<C64>; 2]) -> ComplexMatrix {
    let n = da * db;
    // T[(i,b), (j,l)] = Σ_b' H[(i,b), (j,b')] v_l[b']
    let mut t = vec![ZERO; n * da * 2];
    for row in 0..n {
        for j in 0..da {
            for l in 0..2 {
                let mut s = ZERO;
                for bp in 0..db {
                    s += h[(row, j * db + bp)] * frame[l][bp];
                }
                t[row * da * 2 + j * 2 + l] = s;
            }
        }
    }
    ComplexMatrix::from_fn(2 * da, 2 * da, |r, c| {
        let (i, k) = (r / 2, r % 2);
        let mut s = ZERO;
        for b in 0..db {
            s += frame[k][b].conj() * t[(i * db + b) * da * 2 + c];
        }
        s
    })
}

/// `(U ⊗ I)ᴴ H (U ⊗ I)` for a `da × 2` frame, indexed `(k, b)`.
fn reduce_left(h: &ComplexMatrix, da: usize, db: usize, frame: &[Vec<C64>; 2]) -> ComplexMatrix {
    let n = da * db;
    // T[(i,b), (l,b')] = Σ_j H[(i,b), (j,b')] u_l[j]
    let mut t = vec![ZERO; n * 2 * db];
    for row in 0..n {
        for l in 0..2 {
            for bp in 0..db {
                let mut s = ZERO;
                for j in 0..da {
                    s += h[(row, j * db + bp)] * frame[l][j];
                }
                t[row * 2 * db + l * db + bp] = s;
            }
        }
    }
    ComplexMatrix::from_fn(2 * db, 2 * db, |r, c| {
        let (k, b) = (r / db, r % db);
        let mut s = ZERO;
        for i in 0..da {
            s += frame[k][i].conj() * t[(i * db + b) * 2 * db + c];
        }
        s
    })
}

fn lowest(m: &ComplexMatrix) -> Vec<C64> {
    let herm = (m + &m.adjoint()).scale_real(0.5);
    let eig = hermitian_eigs(&herm).expect("Hermitian by construction");
    eig.vector(eig.values.len() - 1)
}

fn complete_frame(mut pair: [Vec<C64>; 2]) -> [Vec<C64>; 2] {
    orthonormalize(&mut pair);
    pair
}

fn random_frame(dim: usize, rng: &mut StreamRng) -> [Vec<C64>; 2] {
    let mut draw = || -> Vec<C64> {
        (0..dim)
            .map(|_| C64::new(StandardNormal.sample(&mut *rng), StandardNormal.sample(&mut *rng)))
            .collect()
    };
    let pair = [draw(), draw()];
    complete_frame(pair)
}

fn basis_frame(dim: usize) -> [Vec<C64>; 2] {
    let mut e0 = vec![ZERO; dim];
    let mut e1 = vec![ZERO; dim];
    e0[0] = ONE;
    e1[1] = ONE;
    [e0, e1]
}

/// Alternating descent from a right frame; returns the final rank-2 vector.
fn descend(h: &ComplexMatrix, da: usize, db: usize, mut right: [Vec<C64>; 2]) -> (f64, SchmidtRank2) {
    let mut best = f64::INFINITY;
    let mut current = None;
    for round in 0..MAX_ROUNDS {
        // left side free, right frame fixed
        let w = lowest(&reduce_right(h, da, db, &right));
        let mut psi = vec![ZERO; da * db];
        for i in 0..da {
            for k in 0..2 {
                for b in 0..db {
                    psi[i * db + b] += w[i * 2 + k] * right[k][b];
                }
            }
        }
        let s = SchmidtRank2::from_vector(&psi, da, db);
        let left = complete_frame(s.u.clone());
        // right side free, left frame fixed
        let w = lowest(&reduce_left(h, da, db, &left));
        let mut psi = vec![ZERO; da * db];
        for k in 0..2 {
            for i in 0..da {
                for b in 0..db {
                    psi[i * db + b] += left[k][i] * w[k * db + b];
                }
            }
        }
        let s = SchmidtRank2::from_vector(&psi, da, db);
        let value = quadratic(h, &s.vector());
        right = complete_frame(s.v.clone());
        let improved = best - value;
        if value < best {
            best = value;
            current = Some(s);
        }
        if round > 0 && improved <= ROUND_TOL * (1.0 + best.abs()) {
            break;
        }
    }
    (best, current.expect("at least one round"))
}

/// Minimum of `⟨ψ, ρᴳψ⟩` over Schmidt-rank-2 unit vectors found from
/// `restarts` starts; restart 0 is the fixed start, the others use
/// stream `r` of `seed`.
pub fn witness_min(rho: &ComplexMatrix, dim_a: usize, dim_b: usize, restarts: usize, seed: u64) -> Result<WitnessResult> {
    if dim_a < 2 || dim_b < 2 {
        return Err(Error::Dimension("both factors need dimension at least 2".into()));
    }
    if restarts < 1 {
        return Err(Error::InvalidArgument("restarts must be at least 1".into()));
    }
    let h = partial_transpose(rho, dim_a, dim_b)?;
    let start = SchmidtRank2 {
        p: [std::f64::consts::FRAC_1_SQRT_2; 2],
        u: basis_frame(dim_a),
        v: basis_frame(dim_b),
    };
    let start_value = quadratic(&h, &start.vector());
    let runs = map_indexed(restarts, |r| {
        let frame = if r == 0 { basis_frame(dim_b) } else { random_frame(dim_b, &mut stream(seed, r as u64)) };
        descend(&h, dim_a, dim_b, frame)
    });
    let (min_value, argmin) = runs
        .into_iter()
        .fold(None::<(f64, SchmidtRank2)>, |acc, run| match acc {
            Some(a) if a.0 <= run.0 => Some(a),
            _ => Some(run),
        })
        .expect("restarts >= 1");
    Ok(WitnessResult { min_value, argmin, restarts_used: restarts, start_value })
}
