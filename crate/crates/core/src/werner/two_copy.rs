use super::state::WernerState;
use super::witness::{witness_min, WitnessResult};
use crate::error::Result;
use crate::linalg::{tensor, ComplexMatrix};

const D: usize = 4;

/// `ρ ⊗ ρ` reordered from `A₁B₁A₂B₂` to `(A₁A₂)(B₁B₂)`.
pub fn two_copy_density(state: &WernerState) -> ComplexMatrix {
    let rho = state.density();
    let rr = tensor(&rho, &rho);
    let d = state.d;
    let n = d * d * d * d;
    // new index (a1 a2 b1 b2) -> old index (a1 b1 a2 b2)
    let old = |k: usize| {
        let (a1, a2, b1, b2) = (k / (d * d * d), (k / (d * d)) % d, (k / d) % d, k % d);
        ((a1 * d + b1) * d + a2) * d + b2
    };
    ComplexMatrix::from_fn(n, n, |r, c| rr[(old(r), old(c))])
}

/// Schmidt-rank-2 witness search on two copies of the `d = 4` Werner state.
pub fn two_copy_search(alpha: f64, restarts: usize, seed: u64) -> Result<WitnessResult> {
    let state = WernerState::new(D, alpha)?;
    witness_min(&two_copy_density(&state), D * D, D * D, restarts, seed)
}
