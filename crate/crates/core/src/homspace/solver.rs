use nalgebra::{DMatrix, DVector};

use super::curvature::{grad_hess, ricci_blocks, scalar_curvature, stilde_laurent, volume_factor};
use super::isotropy::IsotropyData;
use super::metric::DiagonalMetric;
use crate::error::{Error, Result};

pub const EINSTEIN_TOL: f64 = 1e-8;
pub const MAX_ITERATIONS: usize = 200;

/// A diagonal metric together with its Einstein defect.
#[derive(Debug, Clone, PartialEq)]
pub struct EinsteinCandidate {
    pub metric: DiagonalMetric,
    /// Mean Ricci eigenvalue `s / n`.
    pub lambda: f64,
    /// `r_i - lambda` for every summand.
    pub residuals: Vec<f64>,
    pub gradient_norm: f64,
    pub iterations: usize,
}

impl EinsteinCandidate {
    pub fn evaluate(data: &IsotropyData, metric: DiagonalMetric) -> Self {
        let lambda = scalar_curvature(data, &metric) / data.total_dim() as f64;
        let residuals = ricci_blocks(data, &metric).into_iter().map(|r| r - lambda).collect();
        let gradient_norm = grad_hess(data, &metric).0.norm();
        Self {
            metric,
            lambda,
            residuals,
            gradient_norm,
            iterations: 0,
        }
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m, r| m.max(r.abs()))
    }

    pub fn is_einstein(&self) -> bool {
        self.max_residual() <= EINSTEIN_TOL && self.gradient_norm <= EINSTEIN_TOL
    }

    /// Same candidate, homothetically rescaled so entry `index` equals `value`.
    pub fn gauged(&self, data: &IsotropyData, index: usize, value: f64) -> Result<Self> {
        let mut out = Self::evaluate(data, self.metric.gauge_to(index, value)?);
        out.iterations = self.iterations;
        Ok(out)
    }
}

/// Newton iteration for a critical point of the normalised total scalar curvature.
///
/// Works in `y = ln x` on `F(y) = x * grad S(x)`, bordered by the volume gauge
/// `sum d_i y_i = 0`. Steps are clamped to unit max-norm in `y`.
pub fn find_einstein(data: &IsotropyData, start: &DiagonalMetric) -> Result<EinsteinCandidate> {
    let r = data.r();
    if start.len() != r {
        return Err(Error::Parameter(format!(
            "start metric has {} scales but the space has {r} summands",
            start.len()
        )));
    }
    let p = stilde_laurent(data);
    let d: Vec<f64> = data.dims().iter().map(|&k| k as f64).collect();
    let n = data.total_dim() as f64;

    let shift = volume_factor(data, start).ln() * 2.0 / n;
    let mut y: Vec<f64> = start.x().iter().map(|v| v.ln() - shift).collect();

    for it in 1..=MAX_ITERATIONS {
        let x: Vec<f64> = y.iter().map(|v| v.exp()).collect();
        let grad = p.gradient(&x);
        let hess = p.hessian(&x);
        let f: Vec<f64> = (0..r).map(|i| x[i] * grad[i]).collect();

        let mut a = DMatrix::zeros(r + 1, r + 1);
        let mut rhs = DVector::zeros(r + 1);
        for i in 0..r {
            for j in 0..r {
                a[(i, j)] = x[i] * x[j] * hess[i * r + j] + if i == j { f[i] } else { 0.0 };
            }
            a[(i, r)] = 1.0;
            a[(r, i)] = d[i];
            rhs[i] = -f[i];
        }
        rhs[r] = -d.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>();

        let step = a.lu().solve(&rhs).ok_or_else(|| Error::SolverFailure {
            message: "singular bordered Jacobian".into(),
            iterations: it,
            last_iterate: x.clone(),
        })?;
        let size = (0..r).fold(0.0f64, |m, i| m.max(step[i].abs()));
        let damp = if size > 1.0 { 1.0 / size } else { 1.0 };
        for i in 0..r {
            y[i] += damp * step[i];
        }
        if size < 1e-14 {
            let metric = DiagonalMetric::new(y.iter().map(|v| v.exp()).collect())?;
            let mut cand = EinsteinCandidate::evaluate(data, metric);
            cand.iterations = it;
            return Ok(cand);
        }
    }
    let x: Vec<f64> = y.iter().map(|v| v.exp()).collect();
    let metric = DiagonalMetric::new(x.clone())?;
    let cand = EinsteinCandidate::evaluate(data, metric);
    if cand.is_einstein() {
        let mut cand = cand;
        cand.iterations = MAX_ITERATIONS;
        return Ok(cand);
    }
    Err(Error::SolverFailure {
        message: format!(
            "no critical point within {MAX_ITERATIONS} Newton steps; gradient norm {:.3e}",
            cand.gradient_norm
        ),
        iterations: MAX_ITERATIONS,
        last_iterate: x,
    })
}
