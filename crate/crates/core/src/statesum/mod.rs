//! State sums on triangulated 4-manifolds: complexes, labellings, 5j
//! traces, sphericity, and the regularized partition function.

mod config;
mod evaluate;
mod five_j;
mod labelling;
mod triangulation;

pub use config::{parse_config, AmplitudeConfig, EdgeWeight, FaceAmplitude, Integrator, TetraAmplitude, CONFIG_KEYS};
pub use evaluate::{bc_face_weight, evaluate_z, evaluate_z_with, face_amplitude, ZReport, MAX_GRID_POINTS};
pub use five_j::{
    five_j, pentagon_trace, simplex_fields, sphericity_check, sphericity_sweep, PentagonTrace, SphericityReport,
};
pub use labelling::{
    admissible, load_labels, time_ordered_labelling, triangle_status, AdmissibilityReport, FaceLabel, Labelling,
    RidgeTerm, TetraField, TriangleCheck, TriangleStatus, ADMISSIBILITY_TOL, RIDGE_MAX_DEGREE, RIDGE_TERMS,
};
pub use triangulation::{load_triangulation, Triangulation};
