//! Exact and brute-force checkers for the supporting optimization lemmas.

mod batch;
mod grid;
mod quadratic;
mod rayleigh;

pub use batch::{run_lemma, Lemma, LemmaTally};
pub use grid::grid_optimum;
pub use quadratic::{
    dichotomy_check, equal_y_check, random_dichotomy_instance, random_equal_y_instance, Dichotomy, DichotomyReport,
    EqualYReport, QuadraticInstance, Reduction,
};
pub use rayleigh::{random_rayleigh_instance, rayleigh_bound_check, RayleighCheck};
