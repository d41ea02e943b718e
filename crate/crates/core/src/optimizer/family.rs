//! Sampler families, each a strategy registered by tag.
//!
//! A family draws a point in a canonical frame `(A', B')` whose entries live
//! in a fixed [`Structure`], then rotates it by local unitaries:
//! `A = U A' Uᴴ`, `B = V B' Vᴴ`. The optimizer ascends in the canonical frame
//! so the structure is kept exactly.

use std::f64::consts::PI;
use std::sync::OnceLock;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::predicates::{in_block2_class, is_normal, paired_swap_like, weighted_cycle_like};
use super::structure::Structure;
use crate::conjecture::{apply_transform, project_to_feasible, FeasiblePoint, Transform};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::rng::{stream, StreamRng};

/// A point in its canonical frame with the frame and structure that produced it.
#[derive(Clone, Debug)]
pub struct FramedPoint {
    pub canonical: FeasiblePoint,
    pub frame_a: ComplexMatrix,
    pub frame_b: ComplexMatrix,
    pub structure_a: Structure,
    pub structure_b: Structure,
}

impl FramedPoint {
    fn new(a: ComplexMatrix, b: ComplexMatrix, frame_a: ComplexMatrix, frame_b: ComplexMatrix, sa: Structure, sb: Structure) -> Result<Self> {
        Ok(Self { canonical: project_to_feasible(&a, &b)?, frame_a, frame_b, structure_a: sa, structure_b: sb })
    }

    pub fn with_canonical(&self, canonical: FeasiblePoint) -> Self {
        Self { canonical, ..self.clone() }
    }

    /// The point in the original basis.
    pub fn point(&self) -> FeasiblePoint {
        let t = Transform::LocalUnitary { u: self.frame_a.clone(), v: self.frame_b.clone() };
        apply_transform(&self.canonical, &t).expect("frames are unitary")
    }
}

pub trait Family: Send + Sync {
    fn tag(&self) -> &'static str;

    fn supports(&self, d: usize) -> Result<()> {
        if d < 2 {
            return Err(Error::Dimension(format!("d must be at least 2, got {d}")));
        }
        Ok(())
    }

    fn draw(&self, d: usize, rng: &mut StreamRng) -> Result<FramedPoint>;

    /// Structural predicate every sample of the family satisfies.
    fn admits(&self, p: &FeasiblePoint) -> bool;

    /// Whether the family stays inside a class where the bound is a theorem.
    fn bound_proven(&self) -> bool;
}

fn identity_frames(d: usize) -> (ComplexMatrix, ComplexMatrix) {
    (ComplexMatrix::identity(d), ComplexMatrix::identity(d))
}

pub struct General;

impl Family for General {
    fn tag(&self) -> &'static str {
        "general"
    }

    fn draw(&self, d: usize, rng: &mut StreamRng) -> Result<FramedPoint> {
        self.supports(d)?;
        let a = ComplexMatrix::random_gaussian(d, d, rng);
        let b = ComplexMatrix::random_gaussian(d, d, rng);
        let (u, v) = identity_frames(d);
        FramedPoint::new(a, b, u, v, Structure::Full, Structure::Full)
    }

    fn admits(&self, _p: &FeasiblePoint) -> bool {
        true
    }

    fn bound_proven(&self) -> bool {
        false
    }
}

pub struct NormalA;

impl Family for NormalA {
    fn tag(&self) -> &'static str {
        "normal_a"
    }

    fn draw(&self, d: usize, rng: &mut StreamRng) -> Result<FramedPoint> {
        self.supports(d)?;
        let sa = Structure::diagonal(d);
        let a = sa.random(d, rng);
        let b = ComplexMatrix::random_gaussian(d, d, rng);
        let u = ComplexMatrix::random_unitary(d, rng);
        FramedPoint::new(a, b, u, ComplexMatrix::identity(d), sa, Structure::Full)
    }

    fn admits(&self, p: &FeasiblePoint) -> bool {
        is_normal(p.a())
    }

    fn bound_proven(&self) -> bool {
        true
    }
}

pub struct NormalBoth;

impl Family for NormalBoth {
    fn tag(&self) -> &'static str {
        "normal_both"
    }

    fn draw(&self, d: usize, rng: &mut StreamRng) -> Result<FramedPoint> {
        self.supports(d)?;
        let s = Structure::diagonal(d);
        let a = s.random(d, rng);
        let b = s.random(d, rng);
        let u = ComplexMatrix::random_unitary(d, rng);
        let v = ComplexMatrix::random_unitary(d, rng);
        FramedPoint::new(a, b, u, v, s.clone(), s)
    }

    fn admits(&self, p: &FeasiblePoint) -> bool {
        is_normal(p.a()) && is_normal(p.b())
    }

    fn bound_proven(&self) -> bool {
        true
    }
}

/// `B` a rotated direct sum of `1 × 1` and `2 × 2` blocks (at least one of
/// size two); `A` unrestricted.
pub struct BlockTwoB;

impl Family for BlockTwoB {
    fn tag(&self) -> &'static str {
        "b_in_P"
    }

    fn draw(&self, d: usize, rng: &mut StreamRng) -> Result<FramedPoint> {
        self.supports(d)?;
        let mut sizes = Vec::new();
        let mut left = d;
        while left > 0 {
            let s = if left >= 2 && rng.random_bool(0.5) { 2 } else { 1 };
            sizes.push(s);
            left -= s;
        }
        if !sizes.contains(&2) {
            sizes.truncate(d - 2);
            sizes.push(2);
        }
        let sb = Structure::blocks(&sizes);
        let a = ComplexMatrix::random_gaussian(d, d, rng);
        let b = sb.random(d, rng);
        let v = ComplexMatrix::random_unitary(d, rng);
        FramedPoint::new(a, b, ComplexMatrix::identity(d), v, Structure::Full, sb)
    }

    fn admits(&self, p: &FeasiblePoint) -> bool {
        in_block2_class(p.b())
    }

    fn bound_proven(&self) -> bool {
        false
    }
}

/// The two special `4 × 4` classes: each matrix normal or a rotated pair of
/// traceless `2 × 2` blocks; or one normal and the other a rotated weighted
/// 4-cycle.
pub struct SpecialForms4;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Shape {
    Normal,
    PairedSwap,
    Cycle,
}

impl SpecialForms4 {
    fn structure(shape: Shape, theta: f64) -> Structure {
        match shape {
            Shape::Normal => Structure::diagonal(4),
            Shape::PairedSwap => Structure::paired_swap4(),
            Shape::Cycle => Structure::weighted_cycle4(theta),
        }
    }
}

impl Family for SpecialForms4 {
    fn tag(&self) -> &'static str {
        "theorem2_forms"
    }

    fn supports(&self, d: usize) -> Result<()> {
        if d != 4 {
            return Err(Error::InvalidArgument(format!("theorem2_forms is defined only for d = 4, got {d}")));
        }
        Ok(())
    }

    fn draw(&self, d: usize, rng: &mut StreamRng) -> Result<FramedPoint> {
        self.supports(d)?;
        let theta = rng.random_range(0.0..2.0 * PI);
        let (sa, sb) = if rng.random_bool(0.5) {
            let pick = |rng: &mut StreamRng| if rng.random_bool(0.5) { Shape::Normal } else { Shape::PairedSwap };
            let a = pick(rng);
            let b = pick(rng);
            if a == Shape::Normal && b == Shape::Normal { (a, Shape::PairedSwap) } else { (a, b) }
        } else if rng.random_bool(0.5) {
            (Shape::Normal, Shape::Cycle)
        } else {
            (Shape::Cycle, Shape::Normal)
        };
        let (sa, sb) = (Self::structure(sa, theta), Self::structure(sb, theta));
        let a = sa.random(d, rng);
        let b = sb.random(d, rng);
        let u = ComplexMatrix::random_unitary(d, rng);
        let v = ComplexMatrix::random_unitary(d, rng);
        FramedPoint::new(a, b, u, v, sa, sb)
    }

    fn admits(&self, p: &FeasiblePoint) -> bool {
        if p.d() != 4 {
            return false;
        }
        let (a, b) = (p.a(), p.b());
        let swap_or_normal = |m: &ComplexMatrix| is_normal(m) || paired_swap_like(m);
        (swap_or_normal(a) && swap_or_normal(b))
            || (is_normal(a) && weighted_cycle_like(b))
            || (is_normal(b) && weighted_cycle_like(a))
    }

    fn bound_proven(&self) -> bool {
        true
    }
}

pub struct FamilyRegistry {
    families: Vec<Box<dyn Family>>,
}

impl Default for FamilyRegistry {
    fn default() -> Self {
        let mut r = Self { families: Vec::new() };
        r.register(General);
        r.register(NormalA);
        r.register(NormalBoth);
        r.register(BlockTwoB);
        r.register(SpecialForms4);
        r
    }
}

impl FamilyRegistry {
    pub fn register<F: Family + 'static>(&mut self, family: F) {
        self.families.push(Box::new(family));
    }

    pub fn tags(&self) -> Vec<&'static str> {
        self.families.iter().map(|f| f.tag()).collect()
    }

    pub fn get(&self, tag: &str) -> Result<&dyn Family> {
        self.families
            .iter()
            .find(|f| f.tag() == tag)
            .map(|f| f.as_ref())
            .ok_or_else(|| Error::Unknown { kind: "sampler family", name: tag.to_string() })
    }

    /// Families that can sample at dimension `d`, in registration order.
    pub fn available(&self, d: usize) -> Vec<&dyn Family> {
        self.families.iter().filter(|f| f.supports(d).is_ok()).map(|f| f.as_ref()).collect()
    }
}

pub fn families() -> &'static FamilyRegistry {
    static REGISTRY: OnceLock<FamilyRegistry> = OnceLock::new();
    REGISTRY.get_or_init(FamilyRegistry::default)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerFamily {
    pub tag: String,
    pub d: usize,
    pub rng_seed: u64,
}

impl SamplerFamily {
    pub fn new(tag: impl Into<String>, d: usize, rng_seed: u64) -> Self {
        Self { tag: tag.into(), d, rng_seed }
    }

    pub fn resolve(&self) -> Result<&'static dyn Family> {
        let f = families().get(&self.tag)?;
        f.supports(self.d)?;
        Ok(f)
    }
}

/// One point from the family, deterministic in `rng_seed`.
pub fn sample(family: &SamplerFamily) -> Result<FeasiblePoint> {
    let f = family.resolve()?;
    Ok(f.draw(family.d, &mut stream(family.rng_seed, 0))?.point())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjecture::{NORM_TOL, TRACE_TOL};

    #[test]
    fn registry_contents() {
        assert_eq!(families().tags(), vec!["general", "normal_a", "normal_both", "b_in_P", "theorem2_forms"]);
        assert!(matches!(families().get("bogus"), Err(Error::Unknown { .. })));
        assert_eq!(families().available(5).len(), 4);
        assert_eq!(families().available(4).len(), 5);
    }

    #[test]
    fn samples_are_feasible_and_sound() {
        for tag in families().tags() {
            for seed in 0..20 {
                let p = sample(&SamplerFamily::new(tag, 4, seed)).unwrap();
                assert!(p.a().trace().norm() <= TRACE_TOL && p.b().trace().norm() <= TRACE_TOL);
                assert!((p.norm_sq() - 0.25).abs() <= NORM_TOL);
                assert!(families().get(tag).unwrap().admits(&p), "{tag} seed {seed}");
            }
        }
    }

    #[test]
    fn deterministic_in_seed() {
        let f = SamplerFamily::new("normal_both", 5, 77);
        let p = sample(&f).unwrap();
        let q = sample(&f).unwrap();
        assert_eq!(p.a(), q.a());
        assert_eq!(p.b(), q.b());
        assert!(p.a().commutator_defect() < 1e-12);
    }

    #[test]
    fn special_forms_need_d4() {
        assert!(sample(&SamplerFamily::new("theorem2_forms", 5, 1)).is_err());
    }

    #[test]
    fn general_samples_fail_structured_predicates() {
        let p = sample(&SamplerFamily::new("general", 4, 3)).unwrap();
        assert!(!NormalA.admits(&p));
        assert!(!BlockTwoB.admits(&p));
        assert!(!SpecialForms4.admits(&p));
    }
}
