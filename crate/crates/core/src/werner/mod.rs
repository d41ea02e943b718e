//! Werner states, their partial transpose, the Schmidt-rank-2 witness
//! search and the two-copy experiment.

mod state;
mod two_copy;
mod witness;

pub use state::{classify, ppt_min_eig, swap_operator, werner_density, Classification, Convention, WernerState};
pub use two_copy::{two_copy_density, two_copy_search};
pub use witness::{witness_min, SchmidtRank2, WitnessResult};
