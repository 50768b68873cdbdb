//! Path indices counted as signed crossings of eigenangle strands through pi,
//! and rotation numbers from the Souriau quasimorphism.

mod flow;
mod path;
mod rotation;

pub use flow::{
    arnold_number, crossings, eigenangle_flow, pair_path_index, pair_path_index_with_phase,
    pair_path_phase, write_flow_csv, AngleFlow, CrossingRecord, PathIndex, Reference,
    MAX_REFINE_DEPTH, MAX_STEP, TANGENCY_SLOPE,
};
pub use path::{BoundaryPath, PathSource};
pub use rotation::{
    circle_distance, default_base_point, quasimorphism_c, rotation_estimate, rotation_rho,
    translation_tau, RotationEstimate,
};
