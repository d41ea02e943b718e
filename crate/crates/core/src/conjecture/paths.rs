//! Interchangeable routes to the top singular values of `X = A ⊗ I + I ⊗ B`.
//!
//! Each route implements [`EvaluationPath`] and is registered by name in a
//! [`PathRegistry`]. The registry tries routes in priority order and uses
//! the first one whose precondition holds:
//!
//! | name          | precondition        | cost                         |
//! |---------------|---------------------|------------------------------|
//! | `closed_form` | `A`, `B` both normal | `O(d³)`, sums of eigenvalues |
//! | `block`       | `A` or `B` normal    | `d` SVDs of size `d`         |
//! | `dense`       | none                | one SVD of size `d²`         |
//!
//! All routes return singular triples expressed in the original basis of
//! `X`, so downstream gradient code does not care which route ran.

use std::sync::OnceLock;

use super::point::{assemble_x, FeasiblePoint};
use crate::error::{Error, Result};
use crate::linalg::{diagonalize_normal, svd, ComplexMatrix, NormalDiagonalization, C64, ONE};

#[derive(Clone, Debug)]
pub struct SingularTriple {
    pub value: f64,
    /// Left singular vector in `C^{d²}`.
    pub left: Vec<C64>,
    /// Right singular vector in `C^{d²}`.
    pub right: Vec<C64>,
    /// Diagonal block of origin when the route is block structured.
    pub block: Option<usize>,
}

/// Precomputed facts about a point shared by all routes.
pub struct PointAnalysis<'a> {
    pub point: &'a FeasiblePoint,
    pub a_diag: Option<NormalDiagonalization>,
    pub b_diag: Option<NormalDiagonalization>,
}

impl<'a> PointAnalysis<'a> {
    pub fn new(point: &'a FeasiblePoint) -> Self {
        Self { point, a_diag: normal_form(point.a()), b_diag: normal_form(point.b()) }
    }

    /// Skips the normality tests; only the dense route will apply.
    pub fn dense_only(point: &'a FeasiblePoint) -> Self {
        Self { point, a_diag: None, b_diag: None }
    }
}

fn normal_form(m: &ComplexMatrix) -> Option<NormalDiagonalization> {
    if m.is_diagonal(0.0) {
        return Some(NormalDiagonalization { unitary: ComplexMatrix::identity(m.rows()), eigenvalues: m.diagonal() });
    }
    if !m.is_normal() {
        return None;
    }
    diagonalize_normal(m)
}

pub trait EvaluationPath: Send + Sync {
    fn name(&self) -> &'static str;

    fn applies(&self, ctx: &PointAnalysis<'_>) -> bool;

    /// Top `k` singular triples, values nonincreasing.
    fn top(&self, ctx: &PointAnalysis<'_>, k: usize) -> Result<Vec<SingularTriple>>;
}

fn kron_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

fn top_k_by_value(mut triples: Vec<SingularTriple>, k: usize) -> Vec<SingularTriple> {
    triples.sort_by(|x, y| y.value.total_cmp(&x.value));
    triples.truncate(k);
    triples
}

pub struct ClosedFormPath;

impl EvaluationPath for ClosedFormPath {
    fn name(&self) -> &'static str {
        "closed_form"
    }

    fn applies(&self, ctx: &PointAnalysis<'_>) -> bool {
        ctx.a_diag.is_some() && ctx.b_diag.is_some()
    }

    fn top(&self, ctx: &PointAnalysis<'_>, k: usize) -> Result<Vec<SingularTriple>> {
        let (Some(na), Some(nb)) = (&ctx.a_diag, &ctx.b_diag) else {
            return Err(Error::InvalidArgument("closed_form route needs both matrices normal".into()));
        };
        let d = ctx.point.d();
        let mut sums: Vec<(usize, usize, C64)> = Vec::with_capacity(d * d);
        for (i, &l) in na.eigenvalues.iter().enumerate() {
            for (j, &m) in nb.eigenvalues.iter().enumerate() {
                sums.push((i, j, l + m));
            }
        }
        sums.sort_by(|x, y| y.2.norm().total_cmp(&x.2.norm()));
        Ok(sums
            .into_iter()
            .take(k)
            .map(|(i, j, z)| {
                let right = kron_vec(&na.unitary.column(i), &nb.unitary.column(j));
                let r = z.norm();
                let phase = if r > 0.0 { z / r } else { ONE };
                let left = right.iter().map(|x| x * phase).collect();
                SingularTriple { value: r, left, right, block: Some(i) }
            })
            .collect())
    }
}

pub struct BlockPath;

impl EvaluationPath for BlockPath {
    fn name(&self) -> &'static str {
        "block"
    }

    fn applies(&self, ctx: &PointAnalysis<'_>) -> bool {
        ctx.a_diag.is_some() || ctx.b_diag.is_some()
    }

    fn top(&self, ctx: &PointAnalysis<'_>, k: usize) -> Result<Vec<SingularTriple>> {
        let p = ctx.point;
        let d = p.d();
        let mut all = Vec::with_capacity(d * d);
        if let Some(na) = &ctx.a_diag {
            // (U ⊗ I)^H X (U ⊗ I) = ⊕ᵢ (λᵢ I + B)
            for (i, &lambda) in na.eigenvalues.iter().enumerate() {
                let ui = na.unitary.column(i);
                let mut block = p.b().clone();
                for r in 0..d {
                    block[(r, r)] += lambda;
                }
                let dec = svd(&block);
                for (s_idx, &value) in dec.s.iter().enumerate() {
                    all.push(SingularTriple {
                        value,
                        left: kron_vec(&ui, &dec.left(s_idx)),
                        right: kron_vec(&ui, &dec.right(s_idx)),
                        block: Some(i),
                    });
                }
            }
        } else if let Some(nb) = &ctx.b_diag {
            // (I ⊗ V)^H X (I ⊗ V) acts as A + μⱼ I on the j-th slice
            for (j, &mu) in nb.eigenvalues.iter().enumerate() {
                let vj = nb.unitary.column(j);
                let mut block = p.a().clone();
                for r in 0..d {
                    block[(r, r)] += mu;
                }
                let dec = svd(&block);
                for (s_idx, &value) in dec.s.iter().enumerate() {
                    all.push(SingularTriple {
                        value,
                        left: kron_vec(&dec.left(s_idx), &vj),
                        right: kron_vec(&dec.right(s_idx), &vj),
                        block: Some(j),
                    });
                }
            }
        } else {
            return Err(Error::InvalidArgument("block route needs one normal matrix".into()));
        }
        Ok(top_k_by_value(all, k))
    }
}

pub struct DensePath;

impl EvaluationPath for DensePath {
    fn name(&self) -> &'static str {
        "dense"
    }

    fn applies(&self, _ctx: &PointAnalysis<'_>) -> bool {
        true
    }

    fn top(&self, ctx: &PointAnalysis<'_>, k: usize) -> Result<Vec<SingularTriple>> {
        let dec = svd(&assemble_x(ctx.point));
        Ok((0..k.min(dec.s.len()))
            .map(|j| SingularTriple { value: dec.s[j], left: dec.left(j), right: dec.right(j), block: None })
            .collect())
    }
}

/// Name-keyed routes in priority order.
pub struct PathRegistry {
    paths: Vec<Box<dyn EvaluationPath>>,
}

impl Default for PathRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(ClosedFormPath);
        r.register(BlockPath);
        r.register(DensePath);
        r
    }
}

impl PathRegistry {
    pub fn empty() -> Self {
        Self { paths: Vec::new() }
    }

    /// Appends a route at the lowest priority.
    pub fn register<P: EvaluationPath + 'static>(&mut self, path: P) {
        self.paths.push(Box::new(path));
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.paths.iter().map(|p| p.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn EvaluationPath> {
        self.paths
            .iter()
            .find(|p| p.name() == name)
            .map(|p| p.as_ref())
            .ok_or_else(|| Error::Unknown { kind: "evaluation path", name: name.to_string() })
    }

    pub fn select(&self, ctx: &PointAnalysis<'_>) -> Result<&dyn EvaluationPath> {
        self.paths
            .iter()
            .find(|p| p.applies(ctx))
            .map(|p| p.as_ref())
            .ok_or_else(|| Error::InvalidArgument("no evaluation path applies".into()))
    }
}

pub fn standard_paths() -> &'static PathRegistry {
    static PATHS: OnceLock<PathRegistry> = OnceLock::new();
    PATHS.get_or_init(PathRegistry::default)
}

/// Top singular triples chosen by the first applicable route.
#[derive(Clone, Debug)]
pub struct TopSpectrum {
    pub path: &'static str,
    pub triples: Vec<SingularTriple>,
}

impl TopSpectrum {
    pub fn values(&self) -> Vec<f64> {
        self.triples.iter().map(|t| t.value).collect()
    }

    pub fn energy(&self) -> f64 {
        self.triples.iter().take(2).map(|t| t.value * t.value).sum()
    }
}

pub fn top_spectrum(p: &FeasiblePoint, k: usize) -> Result<TopSpectrum> {
    let ctx = PointAnalysis::new(p);
    let path = standard_paths().select(&ctx)?;
    Ok(TopSpectrum { path: path.name(), triples: path.top(&ctx, k)? })
}

pub fn top_spectrum_via(p: &FeasiblePoint, name: &str, k: usize) -> Result<TopSpectrum> {
    let paths = standard_paths();
    let path = paths.get(name)?;
    let ctx = if name == "dense" { PointAnalysis::dense_only(p) } else { PointAnalysis::new(p) };
    if !path.applies(&ctx) {
        return Err(Error::InvalidArgument(format!("route `{name}` does not apply to this point")));
    }
    Ok(TopSpectrum { path: path.name(), triples: path.top(&ctx, k)? })
}

/// `σ₁²(X) + σ₂²(X)` through the fastest applicable route.
pub fn objective(p: &FeasiblePoint) -> f64 {
    top_spectrum(p, 2).expect("dense route always applies").energy()
}

/// `σ₁²(X) + σ₂²(X)` through a named route.
pub fn objective_via(p: &FeasiblePoint, name: &str) -> Result<f64> {
    Ok(top_spectrum_via(p, name, 2)?.energy())
}

/// Name of the route [`objective`] would use.
pub fn selected_path(p: &FeasiblePoint) -> &'static str {
    let ctx = PointAnalysis::new(p);
    standard_paths().select(&ctx).map(|p| p.name()).unwrap_or("dense")
}
