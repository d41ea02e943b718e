use super::structure::Structure;
use crate::conjecture::{top_spectrum, FeasiblePoint, SingularTriple};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};

pub const DEFAULT_SMOOTHING_EPS: f64 = 1e-9;

/// A direction `(G_A, G_B)` in the space of matrix pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentPair {
    pub ga: ComplexMatrix,
    pub gb: ComplexMatrix,
}

impl TangentPair {
    pub fn inner(&self, other: &Self) -> f64 {
        self.ga.real_inner(&other.ga) + self.gb.real_inner(&other.gb)
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { ga: self.ga.scale_real(s), gb: self.gb.scale_real(s) }
    }
}

/// `Σ wₜ (Tr₂ uₜvₜᴴ, Tr₁ uₜvₜᴴ)` without forming the `d² × d²` matrix.
fn partial_traces(d: usize, terms: &[(f64, &SingularTriple)]) -> TangentPair {
    let mut ga = ComplexMatrix::zeros(d, d);
    let mut gb = ComplexMatrix::zeros(d, d);
    for &(w, t) in terms {
        let (u, v) = (&t.left, &t.right);
        for i in 0..d {
            for j in 0..d {
                let mut sa = C64::new(0.0, 0.0);
                let mut sb = C64::new(0.0, 0.0);
                for k in 0..d {
                    sa += u[i * d + k] * v[j * d + k].conj();
                    sb += u[k * d + i] * v[k * d + j].conj();
                }
                ga[(i, j)] += sa * w;
                gb[(i, j)] += sb * w;
            }
        }
    }
    TangentPair { ga, gb }
}

/// Gradient (or averaged subgradient) of `σ₁² + σ₂²` at a point, before
/// any projection.
#[derive(Clone, Debug)]
pub struct RawGradient {
    pub value: f64,
    pub gap: f64,
    pub smooth: bool,
    pub grad: TangentPair,
}

/// Euclidean gradient when `σ₂ − σ₃ > eps`; otherwise the members of the
/// cluster around `σ₂` share the remaining top-two slots evenly.
pub fn raw_gradient(p: &FeasiblePoint, eps: f64) -> RawGradient {
    let d = p.d();
    let n = d * d;
    let top = top_spectrum(p, 3.min(n)).expect("dense route always applies");
    let s = top.values();
    let value = top.energy();
    let gap = if n >= 3 { s[1] - s[2] } else { f64::INFINITY };
    if gap > eps {
        let terms: Vec<(f64, &SingularTriple)> = top.triples.iter().take(2).map(|t| (2.0 * t.value, t)).collect();
        return RawGradient { value, gap, smooth: true, grad: partial_traces(d, &terms) };
    }
    let all = top_spectrum(p, n).expect("dense route always applies");
    let s2 = all.triples[1].value;
    let in_cluster = |t: &SingularTriple| (t.value - s2).abs() <= eps;
    let cluster: Vec<&SingularTriple> = all.triples.iter().filter(|t| in_cluster(t)).collect();
    let mut terms: Vec<(f64, &SingularTriple)> = Vec::new();
    let mut slots = 2.0;
    if !in_cluster(&all.triples[0]) {
        terms.push((2.0 * all.triples[0].value, &all.triples[0]));
        slots -= 1.0;
    }
    let share = slots / cluster.len() as f64;
    terms.extend(cluster.iter().map(|t| (2.0 * t.value * share, *t)));
    RawGradient { value, gap, smooth: false, grad: partial_traces(d, &terms) }
}

/// Unprojected Euclidean gradient; rejects points where `σ₂ − σ₃ ≤ eps`.
pub fn euclidean_gradient(p: &FeasiblePoint, eps: f64) -> Result<TangentPair> {
    let raw = raw_gradient(p, eps);
    if !raw.smooth {
        return Err(Error::Nonsmooth { gap: raw.gap });
    }
    Ok(raw.grad)
}

fn traceless(m: &ComplexMatrix) -> ComplexMatrix {
    let d = m.rows();
    let shift = m.trace() / d as f64;
    let mut out = m.clone();
    for i in 0..d {
        out[(i, i)] -= shift;
    }
    out
}

/// Projection onto the tangent space of the feasible set intersected with
/// the given structures: structured, traceless, orthogonal to `(A, B)`.
pub fn project_tangent(p: &FeasiblePoint, g: &TangentPair, sa: &Structure, sb: &Structure) -> TangentPair {
    let ga = traceless(&sa.project(&g.ga));
    let gb = traceless(&sb.project(&g.gb));
    let radial = TangentPair { ga: p.a().clone(), gb: p.b().clone() };
    let r2 = radial.inner(&radial);
    let t = TangentPair { ga, gb };
    if r2 == 0.0 {
        return t;
    }
    let c = t.inner(&radial) / r2;
    TangentPair { ga: &t.ga - &radial.ga.scale_real(c), gb: &t.gb - &radial.gb.scale_real(c) }
}

/// Projected gradient on the full feasible set.
pub fn gradient(p: &FeasiblePoint) -> Result<TangentPair> {
    gradient_with(p, DEFAULT_SMOOTHING_EPS)
}

pub fn gradient_with(p: &FeasiblePoint, eps: f64) -> Result<TangentPair> {
    let g = euclidean_gradient(p, eps)?;
    Ok(project_tangent(p, &g, &Structure::Full, &Structure::Full))
}
