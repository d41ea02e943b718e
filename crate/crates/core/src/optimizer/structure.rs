use std::f64::consts::FRAC_1_SQRT_2;

use crate::linalg::{ComplexMatrix, C64, ONE};

/// Real-linear subspace of `d × d` matrices that a family keeps its
/// canonical-frame matrices in.
#[derive(Clone, Debug, PartialEq)]
pub enum Structure {
    Full,
    /// Entries where the mask is `false` stay zero.
    Mask { d: usize, allowed: Vec<bool> },
    /// Real span of matrices orthonormal under `Re tr(XᴴY)`.
    Span(Vec<ComplexMatrix>),
}

impl Structure {
    pub fn diagonal(d: usize) -> Self {
        Self::Mask { d, allowed: (0..d * d).map(|k| k / d == k % d).collect() }
    }

    /// Block-diagonal pattern with the given block sizes.
    pub fn blocks(sizes: &[usize]) -> Self {
        let d: usize = sizes.iter().sum();
        let mut owner = Vec::with_capacity(d);
        for (b, &s) in sizes.iter().enumerate() {
            owner.extend(std::iter::repeat_n(b, s));
        }
        Self::Mask { d, allowed: (0..d * d).map(|k| owner[k / d] == owner[k % d]).collect() }
    }

    /// `[[0, b1, 0, 0], [b2, 0, 0, 0], [0, 0, 0, b3], [0, 0, b4, 0]]`.
    pub fn paired_swap4() -> Self {
        let on = [(0, 1), (1, 0), (2, 3), (3, 2)];
        Self::Mask { d: 4, allowed: (0..16).map(|k| on.contains(&(k / 4, k % 4))).collect() }
    }

    /// `b1 (E₁₀ + E₃₂) + b2 (E₂₁ + e^{iθ} E₀₃)` with complex `b1`, `b2`.
    pub fn weighted_cycle4(theta: f64) -> Self {
        let mut first = ComplexMatrix::zeros(4, 4);
        first[(1, 0)] = ONE;
        first[(3, 2)] = ONE;
        let mut second = ComplexMatrix::zeros(4, 4);
        second[(2, 1)] = ONE;
        second[(0, 3)] = C64::from_polar(1.0, theta);
        let i = C64::new(0.0, 1.0);
        let basis = [first, second]
            .into_iter()
            .flat_map(|m| {
                let m = m.scale_real(FRAC_1_SQRT_2);
                [m.clone(), m.scale(i)]
            })
            .collect();
        Self::Span(basis)
    }

    /// Orthogonal projection onto the subspace.
    pub fn project(&self, m: &ComplexMatrix) -> ComplexMatrix {
        match self {
            Structure::Full => m.clone(),
            Structure::Mask { allowed, .. } => {
                let d = m.rows();
                ComplexMatrix::from_fn(d, d, |i, j| if allowed[i * d + j] { m[(i, j)] } else { C64::new(0.0, 0.0) })
            }
            Structure::Span(basis) => {
                let mut out = ComplexMatrix::zeros(m.rows(), m.cols());
                for e in basis {
                    let c = e.real_inner(m);
                    out = &out + &e.scale_real(c);
                }
                out
            }
        }
    }

    pub fn contains(&self, m: &ComplexMatrix, tol: f64) -> bool {
        (&self.project(m) - m).frobenius_norm() <= tol * m.frobenius_norm().max(f64::MIN_POSITIVE)
    }

    pub fn random<R: rand::Rng + ?Sized>(&self, d: usize, rng: &mut R) -> ComplexMatrix {
        self.project(&ComplexMatrix::random_gaussian(d, d, rng))
    }
}
