//! Spectral models from the closed-form theorems, and numerical evidence from
//! finite sections.

mod estimate;
mod model;
mod relations;

pub use estimate::{
    compare, coverage_report, default_exclusion, eigenvalue_bound_gate, eigenvalues, pseudospectrum_grid,
    CompareReport, CoverageReport, EigenvalueGate, Grade, PseudoGrid, Region, SpectralEstimate, MAX_GRID, PROBE_COUNT,
};
pub use model::{boundary_data, model_distance, predict_spectrum, Prediction, SpectrumModel, Spiral};
pub use relations::{
    compact_difference, halfplane_shift, koenigs_check, verify_eigen_relation, CompactDifference, EigenRelation,
    KoenigsReport, RelationReport,
};
