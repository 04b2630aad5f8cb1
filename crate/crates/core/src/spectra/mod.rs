//! Casimir constants from root data and the conformal instability test.

mod cases;
mod casimir;
mod nu;
mod roots;
mod table;

pub use cases::{case_study, hyperquadric_fiber_length, triple_s3_einstein_constant, CaseId, NuReport, TRIPLE_SEARCH_BOUND};
pub use casimir::{casimir, casimir_compare, CasimirOrder, CasimirValue, GroupScale};
pub use nu::{canonical_eigenvalue, canonical_eigenvalue_exact, nu_conformal_test, sasaki_parameters, SasakiParameters};
pub use roots::{RootSystem, RootType};
pub use table::{curated_table, lookup, parse_table, CaseRecord, FiberAction};
