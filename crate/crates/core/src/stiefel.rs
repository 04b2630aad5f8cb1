//! The Stiefel manifold `V_2(R^{n+1}) = SO(n+1)/SO(n-1)` with background
//! form `Q' = -1/2 tr`.

use crate::error::{parameter, Result};
use crate::homspace::{
    divergence_invariant, fd, grad_hess, max_abs, normalized_total_scalar, DiagonalMetric, EinsteinCandidate,
    IsotropyData, StabilityVerdict, Witness,
};
use crate::liecore::{stiefel_basis, BackgroundForm};

pub const STIEFEL_FORM: BackgroundForm = BackgroundForm::Trace(0.5);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StiefelMetric {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub n: usize,
}

impl StiefelMetric {
    pub fn new(x0: f64, x1: f64, x2: f64, n: usize) -> Result<Self> {
        check_n(n)?;
        if [x0, x1, x2].iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(parameter("Stiefel scales must be positive"));
        }
        Ok(Self { x0, x1, x2, n })
    }

    pub fn to_diagonal(&self) -> DiagonalMetric {
        DiagonalMetric::new(vec![self.x0, self.x1, self.x2]).expect("validated scales")
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(parameter(format!("Stiefel manifolds need n >= 3, got {n}")));
    }
    Ok(())
}

/// Bracket data written down directly: `d = (1, n-1, n-1)`, `b = 2(n-1)`,
/// and `[012] = n-1` with its permutations as the only nonzero triples.
pub fn stiefel_isotropy(n: usize) -> Result<IsotropyData> {
    check_n(n)?;
    let m = (n - 1) as f64;
    let mut t = vec![0.0; 27];
    for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)] {
        t[(i * 3 + j) * 3 + k] = m;
    }
    IsotropyData::new(vec![1, n - 1, n - 1], vec![2.0 * m; 3], t)
}

pub fn stiefel_scalar(m: &StiefelMetric) -> f64 {
    let k = (m.n - 1) as f64;
    let StiefelMetric { x0, x1, x2, .. } = *m;
    k * (k / x1 + k / x2 + 1.0 / x0) - k / 2.0 * (x1 / (x2 * x0) + x2 / (x1 * x0) + x0 / (x1 * x2))
}

/// The Einstein metric `(2(n-1), n, n)` with constant `(n-1)^2 / n^2`.
pub fn stiefel_einstein(n: usize) -> Result<EinsteinCandidate> {
    let data = stiefel_isotropy(n)?;
    let nf = n as f64;
    let metric = DiagonalMetric::new(vec![2.0 * (nf - 1.0), nf, nf])?;
    Ok(EinsteinCandidate::evaluate(&data, metric))
}

pub fn stiefel_einstein_constant(n: usize) -> f64 {
    let nf = n as f64;
    (nf - 1.0).powi(2) / (nf * nf)
}

/// `(n-1)[(n-3)(2n^2-2n+1)+1]`.
pub fn stiefel_bracket(n: usize) -> f64 {
    let nf = n as f64;
    (nf - 1.0) * ((nf - 3.0) * (2.0 * nf * nf - 2.0 * nf + 1.0) + 1.0)
}

/// Positive factor turning [`stiefel_bracket`] into `d^2 S / dx_1^2` at the Einstein point.
pub fn stiefel_prefactor(n: usize) -> f64 {
    let nf = n as f64;
    let volume = (2.0 * (nf - 1.0) * nf.powi(2 * n as i32 - 2)).powf(1.0 / (2.0 * nf - 1.0));
    volume / (2.0 * (2.0 * nf - 1.0) * (nf - 1.0) * nf.powi(3))
}

#[derive(Debug, Clone, PartialEq)]
pub struct StiefelInstability {
    pub n: usize,
    pub einstein: EinsteinCandidate,
    pub hessian_11: f64,
    pub closed_form: f64,
    pub closed_form_error: f64,
    /// Divergence of the witness direction, computed on explicit matrices when `n <= 8`.
    pub divergence: Option<f64>,
    pub verdict: StabilityVerdict,
}

pub fn stiefel_instability(n: usize) -> Result<StiefelInstability> {
    let data = stiefel_isotropy(n)?;
    let einstein = stiefel_einstein(n)?;
    let (_, hess) = grad_hess(&data, &einstein.metric);
    let hessian_11 = hess[(1, 1)];
    let closed_form = stiefel_prefactor(n) * stiefel_bracket(n);

    let direction = vec![0.0, 1.0, 0.0];
    let x = einstein.metric.x().to_vec();
    let fd_value = fd::second_directional(
        |y| normalized_total_scalar(&data, &DiagonalMetric::new(y.to_vec()).expect("positive")),
        &x,
        &direction,
    );
    let divergence = if n <= 8 {
        let basis = stiefel_basis(n)?;
        Some(max_abs(&divergence_invariant(&basis, STIEFEL_FORM, &einstein.metric, &direction)?))
    } else {
        None
    };
    Ok(StiefelInstability {
        n,
        closed_form_error: fd::relative_error(hessian_11, closed_form),
        einstein,
        hessian_11,
        closed_form,
        divergence,
        verdict: StabilityVerdict::from_witness(
            Witness::SecondVariation {
                direction,
                value: hessian_11,
                finite_difference: Some(fd_value),
            },
            1,
        ),
    })
}
