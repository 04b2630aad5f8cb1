use nalgebra::{DMatrix, DVector};

use super::isotropy::IsotropyData;
use super::laurent::Laurent;
use super::metric::DiagonalMetric;

fn unit(r: usize, entries: &[(usize, i32)]) -> Vec<i32> {
    let mut e = vec![0; r];
    for &(i, p) in entries {
        e[i] += p;
    }
    e
}

/// Scalar curvature as a Laurent polynomial in the scales.
///
/// `s = 1/2 sum d_i b_i / x_i - 1/4 sum T[ijk] x_k / (x_i x_j)`.
pub fn scalar_laurent(data: &IsotropyData) -> Laurent {
    let r = data.r();
    let mut terms = Vec::new();
    for i in 0..r {
        terms.push((0.5 * data.dims()[i] as f64 * data.b()[i], unit(r, &[(i, -1)])));
    }
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let t = data.t(i, j, k);
                if t != 0.0 {
                    terms.push((-0.25 * t, unit(r, &[(k, 1), (i, -1), (j, -1)])));
                }
            }
        }
    }
    Laurent::from_integer_terms(r, terms)
}

/// Normalised total scalar curvature `prod x_i^{d_i/n} * s` as a Laurent polynomial.
pub fn stilde_laurent(data: &IsotropyData) -> Laurent {
    let n = data.total_dim() as f64;
    let shift: Vec<f64> = data.dims().iter().map(|&d| d as f64 / n).collect();
    scalar_laurent(data).shifted(&shift)
}

pub fn scalar_curvature(data: &IsotropyData, g: &DiagonalMetric) -> f64 {
    scalar_laurent(data).eval(g.x())
}

/// Ricci eigenvalue on each summand, `Ric|m_k = r_k g|m_k`.
pub fn ricci_blocks(data: &IsotropyData, g: &DiagonalMetric) -> Vec<f64> {
    let x = g.x();
    let r = data.r();
    (0..r)
        .map(|k| {
            let dk = data.dims()[k] as f64;
            let mut plus = 0.0;
            let mut minus = 0.0;
            for i in 0..r {
                for j in 0..r {
                    plus += data.t(i, j, k) * x[k] / (x[i] * x[j]);
                    minus += data.t(k, i, j) * x[j] / (x[k] * x[i]);
                }
            }
            data.b()[k] / (2.0 * x[k]) + plus / (4.0 * dk) - minus / (2.0 * dk)
        })
        .collect()
}

/// `prod x_i^{d_i/2}`, the volume relative to the background metric.
pub fn volume_factor(data: &IsotropyData, g: &DiagonalMetric) -> f64 {
    data.dims()
        .iter()
        .zip(g.x())
        .map(|(&d, &x)| x.powf(d as f64 / 2.0))
        .product()
}

pub fn normalized_total_scalar(data: &IsotropyData, g: &DiagonalMetric) -> f64 {
    let n = data.total_dim() as f64;
    volume_factor(data, g).powf(2.0 / n) * scalar_curvature(data, g)
}

/// Analytic gradient and Hessian of the normalised total scalar curvature.
pub fn grad_hess(data: &IsotropyData, g: &DiagonalMetric) -> (DVector<f64>, DMatrix<f64>) {
    let p = stilde_laurent(data);
    let r = data.r();
    (
        DVector::from_vec(p.gradient(g.x())),
        DMatrix::from_row_slice(r, r, &p.hessian(g.x())),
    )
}

/// `d^2/dt^2 S(g + t h)` at `t = 0` for a diagonal direction `h`.
pub fn second_variation(data: &IsotropyData, g: &DiagonalMetric, h: &[f64]) -> f64 {
    let (_, hess) = grad_hess(data, g);
    let v = DVector::from_column_slice(h);
    (v.transpose() * hess * &v)[(0, 0)]
}
