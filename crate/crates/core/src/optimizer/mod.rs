//! Sampling the feasible set and maximizing the objective over it.

mod ascent;
mod family;
mod gradient;
mod kkt;
pub mod predicates;
mod reduced;
mod structure;
mod sweep;

pub use ascent::{maximize, OptimizationReport, OptimizerConfig, RestartTrace, Termination};
pub use family::{
    families, sample, BlockTwoB, Family, FamilyRegistry, FramedPoint, General, NormalA, NormalBoth, SamplerFamily,
    SpecialForms4,
};
pub use gradient::{
    euclidean_gradient, gradient, gradient_with, project_tangent, raw_gradient, RawGradient, TangentPair,
    DEFAULT_SMOOTHING_EPS,
};
pub use kkt::{fit_multipliers, kkt_residual, structured_kkt, KktSummary, LagrangeData};
pub use reduced::{maximize_reduced, reduced_multiplier, reduced_runs, ReducedOptimum};
pub use structure::Structure;
pub use sweep::{figure1_sweep, SweepRecord};
