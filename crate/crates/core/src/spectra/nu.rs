use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::roots::{int, rat};
use crate::error::{parameter, Result};
use crate::homspace::{StabilityVerdict, Witness};

/// The `lambda_1 < 2 Lambda` test for an Einstein metric with constant
/// `einstein_constant` and smallest nonzero Laplace eigenvalue `eigenvalue`.
pub fn nu_conformal_test(eigenvalue: f64, einstein_constant: f64) -> StabilityVerdict {
    StabilityVerdict::from_witness(
        Witness::EigenvalueGap {
            eigenvalue,
            einstein_constant,
        },
        1,
    )
}

pub(crate) fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SasakiParameters {
    pub m: i64,
    /// Square of the fiber scaling that makes the canonical variation Einstein.
    pub t_squared: BigRational,
    pub einstein_constant: BigRational,
    pub two_lambda: BigRational,
}

/// Einstein member of the canonical variation of a circle bundle over a
/// `2m`-dimensional Kähler-Einstein base.
pub fn sasaki_parameters(m: i64) -> Result<SasakiParameters> {
    if m < 2 {
        return Err(parameter(format!("Sasaki parameters need m >= 2, got {m}")));
    }
    Ok(SasakiParameters {
        m,
        t_squared: rat(2 * m, m + 1),
        einstein_constant: rat(m, 2 * m + 2),
        two_lambda: rat(m, m + 1),
    })
}

/// Laplace eigenvalue on the canonical variation for a base eigenvalue
/// `lambda` whose eigenfunctions carry fiber weight `ell`.
pub fn canonical_eigenvalue(lambda: f64, ell: i64, a: f64, m: i64) -> f64 {
    let ell = ell as f64;
    lambda - ((m - 1) as f64 / (2 * m) as f64) * ell * ell / a
}

pub fn canonical_eigenvalue_exact(lambda: &BigRational, ell: i64, a: &BigRational, m: i64) -> BigRational {
    lambda.clone() - rat(m - 1, 2 * m) * int(ell * ell) / a.clone()
}
