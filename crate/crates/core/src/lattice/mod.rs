//! Lattice geometry under the flow: reduction, shortest vectors, Siegel
//! counts, translate experiments, the quadratic-field example, the
//! exterior-square residual and descent from `∧^k` to vectors.

pub mod descent;
pub mod experiment;
pub mod quadratic;
pub mod reduce;
pub mod symplectic;

pub use descent::{contraction_matrix, descend_to_vector, is_decomposable, Descent};
pub use experiment::{
    aggregate, translate_experiment, ExperimentConfig, ExperimentReport, LatticeState, SampleRow, TimeAggregate,
};
pub use quadratic::{l0_inverse, quadratic_subspace_example, QuadraticExample};
pub use reduce::{
    lll_reduce, points_in_ball, shortest_of_reduced, shortest_vector, siegel_count, siegel_count_reduced,
    sup_min_of_reduced, LatticeBasis, LatticePoint, Reduced, DEFAULT_NODE_BUDGET, LLL_DELTA,
};
pub use symplectic::{band_constant, certify_sign_map, symplectic_residual_check, SignCertificate, SymplecticResidual};
