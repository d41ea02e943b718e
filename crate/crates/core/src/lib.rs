//! Numerical toolkit for the Kronecker-sum singular value inequality
//! `σ₁²(X) + σ₂²(X) ≤ (3d − 4)/d²` with `X = A ⊗ I + I ⊗ B`, and for the
//! Werner-state distillability questions it encodes.

pub mod conjecture;
pub mod error;
pub mod linalg;
pub mod optimizer;
pub mod oracles;
pub mod parallel;
pub mod rng;
pub mod werner;

pub use error::{Error, Result};
