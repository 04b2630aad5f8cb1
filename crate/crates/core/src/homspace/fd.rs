//! Central finite differences used as independent checks of analytic derivatives.

use nalgebra::{DMatrix, DVector};

pub const GRADIENT_STEP: f64 = 1e-5;
pub const SECOND_STEP: f64 = 1e-4;

/// `|a - b| / max(|a|, |b|)`, zero when both vanish.
pub fn relative_error(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Central-difference gradient with step `GRADIENT_STEP * x_i` in coordinate `i`.
pub fn gradient(f: impl Fn(&[f64]) -> f64, x: &[f64]) -> DVector<f64> {
    let mut y = x.to_vec();
    DVector::from_iterator(
        x.len(),
        (0..x.len()).map(|i| {
            let h = GRADIENT_STEP * x[i].abs().max(f64::MIN_POSITIVE);
            y[i] = x[i] + h;
            let up = f(&y);
            y[i] = x[i] - h;
            let down = f(&y);
            y[i] = x[i];
            (up - down) / (2.0 * h)
        }),
    )
}

/// Central differences of an analytic gradient, symmetrised.
pub fn hessian_from_gradient(grad: impl Fn(&[f64]) -> DVector<f64>, x: &[f64]) -> DMatrix<f64> {
    let r = x.len();
    let mut out = DMatrix::zeros(r, r);
    let mut y = x.to_vec();
    for j in 0..r {
        let h = GRADIENT_STEP * x[j].abs();
        y[j] = x[j] + h;
        let up = grad(&y);
        y[j] = x[j] - h;
        let down = grad(&y);
        y[j] = x[j];
        out.set_column(j, &((up - down) / (2.0 * h)));
    }
    (&out + out.transpose()) * 0.5
}

/// Second difference of `t -> f(x + t h)` at `t = 0`.
pub fn second_directional(f: impl Fn(&[f64]) -> f64, x: &[f64], h: &[f64]) -> f64 {
    let xs = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let hs = h.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let eps = SECOND_STEP * xs / hs;
    let at = |t: f64| {
        let y: Vec<f64> = x.iter().zip(h).map(|(a, b)| a + t * b).collect();
        f(&y)
    };
    (at(eps) - 2.0 * at(0.0) + at(-eps)) / (eps * eps)
}
