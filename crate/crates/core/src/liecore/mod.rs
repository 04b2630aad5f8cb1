//! Matrix models of `su(n)`, `so(n)` and their products, with adapted bases
//! for the homogeneous spaces in this crate.

mod algebra;
mod bases;
mod cmatrix;

pub use algebra::{build_algebra, build_product, elementary_skew, BackgroundForm, Family, LieAlgebraSpec};
pub use bases::{
    aw_basis, aw_torus, nikonorov_basis, stiefel_basis, triple_s3_basis, validate_pq, AdaptedBasis, Summand,
};
pub use cmatrix::CMatrix;
