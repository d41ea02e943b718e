//! The feasible set, the objective `σ₁²(X) + σ₂²(X)` and its structured
//! evaluation routes, symmetry transforms, and the two-block closed forms.

mod blocks;
mod closed_form;
mod extremal;
mod paths;
mod point;
mod transform;

pub use blocks::{block_spectrum, BlockSpectrum, TopTwoOrigin, DIAGONAL_TOL};
pub use closed_form::{BlockClosedForm, ReducedCoordinates};
pub use extremal::{extremal_point, ExtremalSpec};
pub use paths::{
    objective, objective_via, selected_path, standard_paths, top_spectrum, top_spectrum_via, BlockPath,
    ClosedFormPath, DensePath, EvaluationPath, PathRegistry, PointAnalysis, SingularTriple, TopSpectrum,
};
pub use point::{
    assemble_x, bound, project_to_feasible, remove_traces, scaled_bound, FeasiblePoint, PointRecord, NORM_TOL,
    TRACE_TOL,
};
pub use transform::{apply_transform, Transform};
