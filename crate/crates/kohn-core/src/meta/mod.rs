//! The three meta-procedures (partial Jacobian selection, triangular
//! resolution, Jacobian extension) and the stage iteration that drives
//! Kohn's procedures to the unit multiplier.

mod mp1;
mod mp2;
mod mp3;
mod norm;
mod pipeline;

pub use mp1::{mp1_select_partial_jacobian, mp1_with_change, PartialJacobian};
pub use mp2::{mp2_triangular_resolution, TriangularResolution};
pub use mp3::{mp3_jacobian_extension, revlex_lattice, Extension};
pub use pipeline::{eq71_bound, iterate_step, run_to_unit, run_to_unit_with_cap, PipelineState, RunOutcome, RunReport, StageRecord};
