//! Invariant Einstein metrics on homogeneous spaces and certificates of
//! their instability.

pub mod aloff_wallach;
pub mod error;
pub mod homspace;
pub mod liecore;
pub mod nikonorov;
pub mod spectra;
pub mod stiefel;

pub use error::{Error, Result};
pub use homspace::{Classification, DiagonalMetric, EinsteinCandidate, IsotropyData, StabilityVerdict, Witness};
