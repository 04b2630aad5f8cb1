//! The rotated decomposition of `N^{1,3}` with background form `Q' = -1/2 tr`.

use std::f64::consts::FRAC_PI_4;

use crate::error::{parameter, Result};
use crate::homspace::{
    divergence_invariant, fd, find_einstein, grad_hess, max_abs, normalized_total_scalar, structure_triples,
    DiagonalMetric, EinsteinCandidate, IsotropyData, StabilityVerdict, Witness,
};
use crate::liecore::{nikonorov_basis, BackgroundForm};

pub const NIK_FORM: BackgroundForm = BackgroundForm::Trace(0.5);

/// Rotation angle at which `a = sin^2(2 angle) = 1`.
pub const NIK_ANGLE: f64 = FRAC_PI_4;

/// Published approximation of the first solution, used for the gauge `x_4 = 5.72906`.
pub const NIK_REFERENCE: [f64; 4] = [5.67352, 1.09220, 5.50695, 5.72906];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NikMetric {
    pub x: [f64; 4],
    pub a: f64,
}

impl NikMetric {
    pub fn new(x: [f64; 4], a: f64) -> Result<Self> {
        if x.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(parameter("metric scales must be positive"));
        }
        if !(0.0..=1.0).contains(&a) {
            return Err(parameter(format!("a = {a} must lie in [0, 1]")));
        }
        Ok(Self { x, a })
    }
}

/// `sin^2(2 angle)`.
pub fn mixing_parameter(angle: f64) -> f64 {
    (2.0 * angle).sin().powi(2)
}

pub fn nik_scalar(m: &NikMetric) -> f64 {
    let [x1, x2, x3, x4] = m.x;
    let a = m.a;
    12.0 / x1 + 12.0 / x2 + 12.0 / x3 + 6.0 * a / x4
        - (3.0 - 3.0 * a) / 2.0 * (x4 / (x1 * x1) + x4 / (x2 * x2))
        - 2.0 * (x1 / (x2 * x3) + x2 / (x1 * x3) + x3 / (x1 * x2))
        - 3.0 * a * (x1 / (x2 * x4) + x2 / (x1 * x4) + x4 / (x1 * x2))
}

pub fn nik_isotropy(angle: f64) -> Result<IsotropyData> {
    structure_triples(&nikonorov_basis(angle)?, NIK_FORM)
}

/// The bracket of `dS/dx_2` at `a = 1`, up to the factor `2 V / (7 x_2)`.
pub fn first_derivative_bracket(x: &[f64; 4]) -> f64 {
    let [x1, x2, x3, x4] = *x;
    12.0 / x1 - 30.0 / x2 + 12.0 / x3 + 6.0 / x4 + 5.0 * x1 / (x2 * x3) - 9.0 * x2 / (x1 * x3)
        + 5.0 * x3 / (x1 * x2)
        + 7.5 * x1 / (x2 * x4)
        - 13.5 * x2 / (x1 * x4)
        + 7.5 * x4 / (x1 * x2)
}

/// Simplified bracket of `d^2 S/dx_2^2` valid at critical points.
pub fn second_derivative_bracket(x: &[f64; 4]) -> f64 {
    let [x1, x2, x3, x4] = *x;
    let r = x2 / x1;
    12.0 * r + (12.0 - 18.0 * r) * x2 / x3 + (6.0 - 27.0 * r) * x2 / x4
}

/// `(x_1^2 x_2^2 x_3^2 x_4)^(1/7)`.
pub fn volume_weight(x: &[f64; 4]) -> f64 {
    (x[0] * x[0] * x[1] * x[1] * x[2] * x[2] * x[3]).powf(1.0 / 7.0)
}

fn as_array(g: &DiagonalMetric) -> [f64; 4] {
    let x = g.x();
    [x[0], x[1], x[2], x[3]]
}

/// The two critical points at `a = 1`, each gauged to `x_4 = 5.72906`.
pub fn nik_solve() -> Result<[EinsteinCandidate; 2]> {
    let data = nik_isotropy(NIK_ANGLE)?;
    let start = [5.5, 1.2, 5.3, 5.9];
    let mut out = Vec::with_capacity(2);
    for s in [start, [start[1], start[0], start[2], start[3]]] {
        let cand = find_einstein(&data, &DiagonalMetric::new(s.to_vec())?)?;
        out.push(cand.gauged(&data, 3, NIK_REFERENCE[3])?);
    }
    let second = out.pop().expect("two solutions");
    let first = out.pop().expect("two solutions");
    Ok([first, second])
}

#[derive(Debug, Clone, PartialEq)]
pub struct NikInstability {
    /// 1-based coordinate of the destabilising direction.
    pub axis: usize,
    pub solution: EinsteinCandidate,
    pub second_derivative: f64,
    /// `2 V / (7 x^3)` times [`second_derivative_bracket`] after the `x_1 <-> x_2` relabelling.
    pub simplified: f64,
    pub simplified_bracket: f64,
    /// Ratio of the small to the large of `x_1, x_2`; below `1/5` the bracket is visibly positive.
    pub ratio: f64,
    pub first_derivative_bracket: f64,
    pub divergence: f64,
    pub verdict: StabilityVerdict,
}

pub fn nik_instability(sol: &EinsteinCandidate, axis: usize) -> Result<NikInstability> {
    if axis != 1 && axis != 2 {
        return Err(parameter(format!("axis must be 1 or 2, got {axis}")));
    }
    let data = nik_isotropy(NIK_ANGLE)?;
    let x = as_array(&sol.metric);
    let relabel = if axis == 2 { x } else { [x[1], x[0], x[2], x[3]] };
    let i = axis - 1;

    let (_, hess) = grad_hess(&data, &sol.metric);
    let second_derivative = hess[(i, i)];
    let bracket = second_derivative_bracket(&relabel);
    let simplified = volume_weight(&relabel) * 2.0 / (7.0 * relabel[1].powi(3)) * bracket;

    let mut direction = vec![0.0; 4];
    direction[i] = 1.0;
    let fd_value = fd::second_directional(
        |y| normalized_total_scalar(&data, &DiagonalMetric::new(y.to_vec()).expect("positive")),
        &x,
        &direction,
    );
    let basis = nikonorov_basis(NIK_ANGLE)?;
    let divergence = max_abs(&divergence_invariant(&basis, NIK_FORM, &sol.metric, &direction)?);
    Ok(NikInstability {
        axis,
        solution: sol.clone(),
        second_derivative,
        simplified,
        simplified_bracket: bracket,
        ratio: relabel[1] / relabel[0],
        first_derivative_bracket: first_derivative_bracket(&relabel),
        divergence,
        verdict: StabilityVerdict::from_witness(
            Witness::SecondVariation {
                direction,
                value: second_derivative,
                finite_difference: Some(fd_value),
            },
            1,
        ),
    })
}
