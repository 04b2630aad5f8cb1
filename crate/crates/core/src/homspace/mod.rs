//! Diagonal invariant metrics on reductive homogeneous spaces.

mod curvature;
mod divergence;
pub mod fd;
mod isotropy;
mod laurent;
mod metric;
mod solver;
mod verdict;

pub use curvature::{
    grad_hess, normalized_total_scalar, ricci_blocks, scalar_curvature, scalar_laurent, second_variation,
    stilde_laurent, volume_factor,
};
pub use divergence::{divergence_invariant, max_abs};
pub use isotropy::{structure_triples, IsotropyData};
pub use laurent::Laurent;
pub use metric::DiagonalMetric;
pub use solver::{find_einstein, EinsteinCandidate, EINSTEIN_TOL, MAX_ITERATIONS};
pub use verdict::{Classification, StabilityVerdict, Witness};
