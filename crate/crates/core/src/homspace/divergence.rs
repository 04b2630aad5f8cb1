use super::isotropy::orthonormal_complement;
use super::metric::DiagonalMetric;
use crate::error::{parameter, Result};
use crate::liecore::{AdaptedBasis, BackgroundForm, CMatrix};

/// Divergence of `h = sum c_i Q|m_i` for `g = sum x_i Q|m_i`, on each `g`-orthonormal vector.
///
/// Evaluates `sum_{i,k} h(X_j, X_k) g([X_k, X_i]_m, X_i) - sum_i h([X_j, X_i]_m, X_i)`.
pub fn divergence_invariant(
    basis: &AdaptedBasis,
    form: BackgroundForm,
    g: &DiagonalMetric,
    c: &[f64],
) -> Result<Vec<f64>> {
    let r = basis.summands.len();
    if g.len() != r || c.len() != r {
        return Err(parameter(format!("need {r} metric scales and {r} coefficients")));
    }
    let alg = &basis.algebra;
    let x = g.x();
    let e = orthonormal_complement(basis, form);
    let xs: Vec<(usize, CMatrix)> = e.iter().map(|(s, v)| (*s, v.scale(1.0 / x[*s].sqrt()))).collect();

    // g(Y_m, X) = x_s Q(Y, X) and h(Y_m, X) = c_s Q(Y, X) for X in m_s.
    let g_pair = |y: &CMatrix, (s, v): &(usize, CMatrix)| x[*s] * alg.form(form, y, v);
    let h_pair = |y: &CMatrix, (s, v): &(usize, CMatrix)| c[*s] * alg.form(form, y, v);

    let mean_curvature: Vec<f64> = xs
        .iter()
        .map(|(_, xk)| xs.iter().map(|xi| g_pair(&xk.commutator(&xi.1), xi)).sum())
        .collect();

    Ok(xs
        .iter()
        .map(|xj| {
            let first: f64 = xs
                .iter()
                .zip(&mean_curvature)
                .map(|(xk, mk)| h_pair(&xj.1, xk) * mk)
                .sum();
            let second: f64 = xs.iter().map(|xi| h_pair(&xj.1.commutator(&xi.1), xi)).sum();
            first - second
        })
        .collect())
}

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, a| m.max(a.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::aw_basis;

    #[test]
    fn aw_direction_is_divergence_free() {
        let b = aw_basis(0, 1).unwrap();
        let g = DiagonalMetric::new(vec![1.0, 1.0, 0.5, 0.5]).unwrap();
        let div = divergence_invariant(&b, BackgroundForm::Trace(4.0), &g, &[0.0, 0.0, 1.0, -1.0]).unwrap();
        assert_eq!(div.len(), 7);
        assert!(max_abs(&div) <= 1e-10);
        let same = divergence_invariant(&b, BackgroundForm::Trace(4.0), &g, g.x()).unwrap();
        assert!(max_abs(&same) <= 1e-12);
    }
}
