use nalgebra::{Matrix2, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::castellani::{cr_forward, cr_to_metric, einstein_defect, solve_c_all, Branch, CRState};
use super::metric::{aw_isotropy, aw_stilde, weights, AWMetric, AW_FORM};
use crate::error::Result;
use crate::homspace::{divergence_invariant, fd, grad_hess, max_abs, second_variation, StabilityVerdict, Witness};
use crate::homspace::Laurent;
use crate::liecore::aw_basis;

/// `F3` and `F4` as polynomials in `(alpha, beta, gamma, delta)`.
fn f3_f4(p: i64, q: i64) -> (Laurent, Laurent) {
    let (q2, sp, sm) = weights(p, q);
    let f3 = Laurent::from_integer_terms(
        4,
        [
            (-60.0, vec![3, 0, 1, 3]),
            (24.0, vec![2, 0, 2, 3]),
            (24.0, vec![3, 0, 2, 2]),
            (10.0, vec![4, 0, 1, 2]),
            (-18.0, vec![2, 0, 3, 2]),
            (10.0, vec![2, 0, 1, 4]),
            (-4.0 * q2, vec![1, 1, 2, 3]),
            (6.0 * sp, vec![3, 1, 0, 3]),
            (-sm, vec![3, 1, 2, 1]),
        ],
    );
    let f4 = Laurent::from_integer_terms(
        4,
        [
            (-60.0, vec![3, 0, 3, 1]),
            (24.0, vec![2, 0, 3, 2]),
            (24.0, vec![3, 0, 2, 2]),
            (10.0, vec![4, 0, 2, 1]),
            (10.0, vec![2, 0, 4, 1]),
            (-18.0, vec![2, 0, 2, 3]),
            (-4.0 * q2, vec![1, 1, 3, 2]),
            (-sp, vec![3, 1, 1, 2]),
            (6.0 * sm, vec![3, 1, 3, 0]),
        ],
    );
    (f3, f4)
}

pub fn aw_f3f4(m: &AWMetric) -> (f64, f64) {
    let (f3, f4) = f3_f4(m.p, m.q);
    let x = m.scales();
    (f3.eval(&x), f4.eval(&x))
}

/// Partial derivatives of `F3, F4` in the `gamma, delta` directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct F34Partials {
    pub f3_gamma: f64,
    pub f3_delta: f64,
    pub f4_gamma: f64,
    pub f4_delta: f64,
}

impl F34Partials {
    pub fn at(m: &AWMetric) -> Self {
        let (f3, f4) = f3_f4(m.p, m.q);
        let x = m.scales();
        let g3 = f3.gradient(&x);
        let g4 = f4.gradient(&x);
        Self {
            f3_gamma: g3[2],
            f3_delta: g3[3],
            f4_gamma: g4[2],
            f4_delta: g4[3],
        }
    }

    pub fn discriminant(&self) -> f64 {
        (self.f3_delta + self.f4_gamma).powi(2) - 4.0 * self.f3_gamma * self.f4_delta
    }

    /// Symmetric matrix of `(A, B) -> A^2 F3_g + AB (F3_d + F4_g) + B^2 F4_d`.
    pub fn quadratic_form(&self) -> Matrix2<f64> {
        let off = 0.5 * (self.f3_delta + self.f4_gamma);
        Matrix2::new(self.f3_gamma, off, off, self.f4_delta)
    }
}

/// `(F3_delta + F4_gamma)^2 - 4 F3_gamma F4_delta`.
pub fn aw_discriminant(m: &AWMetric) -> f64 {
    F34Partials::at(m).discriminant()
}

/// Positive factor `P` with `dS/dgamma = P F3` and `dS/ddelta = P F4`.
pub fn gradient_prefactor(m: &AWMetric) -> f64 {
    let [a, b, c, d] = m.scales();
    (a * b.sqrt() * c * d).powf(2.0 / 7.0) / (56.0 * (a * c * d).powi(3))
}

const F_COEFFS: [i64; 5] = [168, 840, 812, -273, -392];

pub fn f_poly(c: f64) -> f64 {
    F_COEFFS.iter().rev().fold(0.0, |acc, &k| acc * c + k as f64)
}

pub fn f_poly_derivative(c: f64) -> f64 {
    F_COEFFS
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(0.0, |acc, (i, &k)| acc * c + (i as i64 * k) as f64)
}

pub fn f_poly_exact(c: &BigRational) -> BigRational {
    F_COEFFS
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, &k| acc * c + BigRational::from_integer(BigInt::from(k)))
}

pub fn f_poly_derivative_exact(c: &BigRational) -> BigRational {
    F_COEFFS.iter().enumerate().skip(1).rev().fold(BigRational::zero(), |acc, (i, &k)| {
        acc * c + BigRational::from_integer(BigInt::from(i as i64 * k))
    })
}

/// Everything computed while certifying one Einstein metric on `N^{pq0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct AwInstability {
    pub p: i64,
    pub q: i64,
    pub branch: Branch,
    pub c: f64,
    pub c_residual: f64,
    pub state: CRState,
    pub metric: AWMetric,
    pub lambda: f64,
    pub einstein_defect: f64,
    pub structure_defect: f64,
    pub f3f4: (f64, f64),
    pub discriminant: f64,
    pub f_c: f64,
    /// `|D - 32 alpha^8 gamma^2 delta^2 f(c)| / |D|`.
    pub identity_error: f64,
    /// Round-trip error of the change of variables.
    pub forward_error: f64,
    pub divergence: f64,
    /// Second variation from the structure-constant Hessian, closed-form normalisation.
    pub second_variation_generic: f64,
    pub verdict: StabilityVerdict,
}

/// Certificates for every root of the slope equation on `branch`.
pub fn aw_instability_all(p: i64, q: i64, branch: Branch) -> Result<Vec<AwInstability>> {
    let data = aw_isotropy(p, q)?;
    let basis = aw_basis(p, q)?;
    let mut out = Vec::new();
    for c in solve_c_all(p, q, branch)? {
        let (metric, lambda) = cr_to_metric(c, branch, p, q)?;
        let state = super::castellani::cr_solution_family(c, branch)?;
        let back = cr_forward(&metric, lambda);
        let forward_error = [
            back.a - state.a,
            back.b - state.b,
            back.u - state.u,
            back.v - state.v,
            back.lambda - state.lambda,
        ]
        .iter()
        .fold(0.0f64, |m, e| m.max(e.abs()));

        let g = metric.to_diagonal();
        let generic = crate::homspace::EinsteinCandidate::evaluate(&data, g.clone());
        let partials = F34Partials::at(&metric);
        let discriminant = partials.discriminant();
        let f_c = f_poly(c);
        let [al, _, ga, de] = metric.scales();
        let predicted = 32.0 * al.powi(8) * ga * ga * de * de * f_c;

        let eig = SymmetricEigen::new(partials.quadratic_form());
        let top = if eig.eigenvalues[0] >= eig.eigenvalues[1] { 0 } else { 1 };
        let (a_dir, b_dir) = (eig.eigenvectors[(0, top)], eig.eigenvectors[(1, top)]);
        let direction = vec![0.0, 0.0, a_dir, b_dir];

        let p_factor = gradient_prefactor(&metric);
        let value = p_factor * eig.eigenvalues[top];
        let closed = |x: &[f64]| {
            metric
                .with_scales([x[0], x[1], x[2], x[3]])
                .map(|m| aw_stilde(&m))
                .unwrap_or(f64::NAN)
        };
        let fd_value = fd::second_directional(closed, &metric.scales(), &direction);
        let generic_value =
            second_variation(&data, &g, &direction) / metric.torus_weight().powf(1.0 / 7.0);

        let div = divergence_invariant(&basis, AW_FORM, &g, &direction)?;
        let (_, hess) = grad_hess(&data, &g);
        let hess_eig = SymmetricEigen::new(hess);
        let scale = hess_eig.eigenvalues.iter().fold(0.0f64, |m, e| m.max(e.abs()));
        let coindex = hess_eig.eigenvalues.iter().filter(|&&e| e > 1e-9 * scale).count();

        out.push(AwInstability {
            p,
            q,
            branch,
            c,
            c_residual: super::castellani::c_equation_residual(c, branch, p, q)?,
            state,
            metric,
            lambda,
            einstein_defect: einstein_defect(&metric, lambda),
            structure_defect: generic.max_residual(),
            f3f4: aw_f3f4(&metric),
            discriminant,
            f_c,
            identity_error: fd::relative_error(discriminant, predicted),
            forward_error,
            divergence: max_abs(&div),
            second_variation_generic: generic_value,
            verdict: StabilityVerdict::from_witness(
                Witness::SecondVariation {
                    direction,
                    value,
                    finite_difference: Some(fd_value),
                },
                coindex,
            ),
        });
    }
    Ok(out)
}

/// Certificate for the first root of the slope equation on `branch`.
pub fn aw_instability_report(p: i64, q: i64, branch: Branch) -> Result<AwInstability> {
    Ok(aw_instability_all(p, q, branch)?.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homspace::Classification;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn f_values_exact() {
        assert_eq!(f_poly_exact(&rat(0, 1)), rat(168, 1));
        assert_eq!(f_poly_exact(&rat(-1, 1)), rat(21, 1));
        assert_eq!(f_poly_exact(&rat(1, 1)), rat(1155, 1));
        assert_eq!(f_poly_derivative_exact(&rat(-1, 1)), rat(-35, 1));
        assert_eq!(f_poly_derivative_exact(&rat(1, 1)), rat(77, 1));
        assert!(f_poly_exact(&rat(-17, 20)) > rat(3, 1));
        assert!(f_poly_exact(&rat(17, 20)) > rat(1096, 1));
        let exact = f_poly_exact(&rat(3, 10));
        assert_eq!(exact, rat(2_412_669, 5_000));
        assert!((f_poly(0.3) - 482.5338).abs() < 1e-10);
        assert!((f_poly_derivative(-1.0) + 35.0).abs() < 1e-12);
    }

    #[test]
    fn f3_f4_examples() {
        let one = AWMetric::new(1.0, 1.0, 1.0, 1.0, 0, 1).unwrap();
        assert_eq!(aw_f3f4(&one), (-9.0, -9.0));
        let e = AWMetric::new(1.0, 1.0, 0.5, 0.5, 0, 1).unwrap();
        let (f3, f4) = aw_f3f4(&e);
        assert!(f3.abs() < 1e-14 && f4.abs() < 1e-14);
        assert!((aw_discriminant(&e) - 42.0).abs() < 1e-12);
        let pp = AWMetric::new(1.0, 1.0, 2.5, 2.5, 0, 1).unwrap();
        let expected = 32.0 * 39.0625 * 1155.0;
        assert!((aw_discriminant(&pp) - expected).abs() < 1e-9 * expected);
    }

    #[test]
    fn f3_is_scaled_gradient() {
        let m = AWMetric::new(0.9, 1.4, 0.6, 1.7, 1, 5).unwrap();
        let x = m.scales();
        let closed = |y: &[f64]| aw_stilde(&m.with_scales([y[0], y[1], y[2], y[3]]).unwrap());
        let g = fd::gradient(closed, &x);
        let (f3, f4) = aw_f3f4(&m);
        let pf = gradient_prefactor(&m);
        assert!(fd::relative_error(g[2], pf * f3) < 1e-8);
        assert!(fd::relative_error(g[3], pf * f4) < 1e-8);
    }

    #[test]
    fn certificate_examples() {
        for (p, q, b) in [(0, 1, Branch::CR), (1, 4, Branch::PP), (1, 3, Branch::CR)] {
            let r = aw_instability_report(p, q, b).unwrap();
            assert_eq!(r.verdict.classification, Classification::SLinearlyUnstable);
            assert!(r.identity_error < 1e-8);
            assert!(r.einstein_defect < 1e-10 && r.structure_defect < 1e-10);
            assert!(r.divergence < 1e-10);
            if let Witness::SecondVariation {
                value,
                finite_difference: Some(fd_value),
                ..
            } = r.verdict.witness
            {
                assert!(fd::relative_error(value, fd_value) < 1e-5);
                assert!(fd::relative_error(value, r.second_variation_generic) < 1e-8);
            } else {
                panic!("missing witness");
            }
        }
    }
}
