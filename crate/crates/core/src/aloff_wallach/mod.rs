//! Aloff-Wallach spaces `N^{pq0} = SU(3)/U(1)`: Einstein metrics through the
//! Castellani-Romans variables and their second-variation certificate.

mod castellani;
mod certificate;
mod metric;

pub use castellani::{
    c_equation_residual, cr_forward, cr_solution_family, cr_to_metric, einstein_defect, solve_c, solve_c_all, Branch,
    CRState,
};
pub use certificate::{
    aw_discriminant, aw_f3f4, aw_instability_all, aw_instability_report, f_poly, f_poly_derivative,
    f_poly_derivative_exact, f_poly_exact, gradient_prefactor, AwInstability, F34Partials,
};
pub use metric::{aw_isotropy, aw_ricci, aw_scalar, aw_stilde, kl_to_pq, AWMetric, AW_FORM};
