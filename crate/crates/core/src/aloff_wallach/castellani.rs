use std::fmt;
use std::str::FromStr;

use super::metric::{aw_ricci, AWMetric};
use crate::error::{parameter, Error, Result};
use crate::liecore::validate_pq;

const INTERVAL_TOL: f64 = 1e-12;
const GRID_STEP: f64 = 1e-3;
const BISECTION_TOL: f64 = 1e-12;
const BISECTION_MAX: usize = 200;

/// The two solution branches of the Castellani-Romans system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    /// `c` in `[-1, -2/sqrt 5]`, `d = +sqrt(1 - c^2)`.
    CR,
    /// `c` in `[2/sqrt 5, 1]`, `d = -sqrt(1 - c^2)`.
    PP,
}

impl Branch {
    pub const ALL: [Branch; 2] = [Branch::CR, Branch::PP];

    pub fn interval(self) -> (f64, f64) {
        let e = 2.0 / 5f64.sqrt();
        match self {
            Branch::CR => (-1.0, -e),
            Branch::PP => (e, 1.0),
        }
    }

    pub fn d_sign(self) -> f64 {
        match self {
            Branch::CR => 1.0,
            Branch::PP => -1.0,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::CR => "CR",
            Branch::PP => "PP",
        })
    }
}

impl FromStr for Branch {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "CR" => Ok(Branch::CR),
            "PP" => Ok(Branch::PP),
            _ => Err(parameter(format!("unknown branch {s:?}, expected CR or PP"))),
        }
    }
}

/// Point in the variables `(a, b, u, v, lambda)` together with its family parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CRState {
    pub a: f64,
    pub b: f64,
    pub u: f64,
    pub v: f64,
    pub lambda: f64,
    pub c: f64,
    pub d_sign: f64,
}

impl CRState {
    /// Residuals of the four polynomial Einstein equations.
    pub fn system_residual(&self) -> [f64; 4] {
        let CRState { a, b, u, v, lambda, .. } = *self;
        let w = (a * v + b * u).powi(2);
        [
            6.0 * a * b + 1.0 - a * a - b * b - w - lambda,
            6.0 * a + b * b - a * a - 1.0 - u * u - lambda,
            6.0 * b + a * a - b * b - 1.0 - v * v - lambda,
            w + u * u + v * v - lambda,
        ]
    }

    pub fn max_system_residual(&self) -> f64 {
        self.system_residual().iter().fold(0.0, |m, r| m.max(r.abs()))
    }

    /// `av / (bu)`, the ratio that fixes the slope.
    pub fn rho(&self) -> f64 {
        self.a * self.v / (self.b * self.u)
    }
}

/// Change of variables from a metric with Einstein constant `lambda`.
pub fn cr_forward(m: &AWMetric, lambda: f64) -> CRState {
    let [al, be, ga, de] = m.scales();
    let (p, q) = (m.p as f64, m.q as f64);
    let a = de / al;
    let b = ga / al;
    let u = (be * de / (al * ga)).sqrt() * (3.0 * p + q) / 2f64.sqrt();
    let v = -(be * ga / (al * de)).sqrt() * (3.0 * p - q) / 2f64.sqrt();
    let d = a - b;
    CRState {
        a,
        b,
        u,
        v,
        lambda: 8.0 * ga * de * lambda / al,
        c: (a + b - 3.0) / 2.0,
        d_sign: if d > 0.0 {
            1.0
        } else if d < 0.0 {
            -1.0
        } else {
            0.0
        },
    }
}

/// Explicit solution of the Einstein system at parameter `c` on `branch`.
pub fn cr_solution_family(c: f64, branch: Branch) -> Result<CRState> {
    let (lo, hi) = branch.interval();
    if !(c >= lo - INTERVAL_TOL && c <= hi + INTERVAL_TOL) {
        return Err(parameter(format!("c = {c} lies outside the {branch} interval [{lo}, {hi}]")));
    }
    let d = branch.d_sign() * (1.0 - c * c).max(0.0).sqrt();
    let u2 = 2.5 - 2.0 * (c + d / 2.0).powi(2);
    let v2 = 2.5 - 2.0 * (c - d / 2.0).powi(2);
    if u2 < -INTERVAL_TOL || v2 < -INTERVAL_TOL {
        return Err(Error::NumericalDomain(format!("u^2 = {u2}, v^2 = {v2} at c = {c}")));
    }
    let uv = -2.0 + 2.5 * c * c;
    let u = u2.max(0.0).sqrt();
    let v = if u > 0.0 { uv / u } else { v2.max(0.0).sqrt() };
    Ok(CRState {
        a: c + d / 2.0 + 1.5,
        b: c - d / 2.0 + 1.5,
        u,
        v,
        lambda: 1.5 * (c + 2.0).powi(2),
        c,
        d_sign: branch.d_sign(),
    })
}

fn slope_defect(c: f64, branch: Branch, p: i64, q: i64) -> Result<f64> {
    let s = cr_solution_family(c, branch)?;
    Ok(s.rho() * (3 * p + q) as f64 - (q - 3 * p) as f64)
}

/// Residual of `3p/q = (1 - rho) / (1 + rho)` at `c`.
pub fn c_equation_residual(c: f64, branch: Branch, p: i64, q: i64) -> Result<f64> {
    let rho = cr_solution_family(c, branch)?.rho();
    Ok((1.0 - rho) / (1.0 + rho) - 3.0 * p as f64 / q as f64)
}

/// Every root of the slope equation on `branch`, from a grid scan plus bisection.
pub fn solve_c_all(p: i64, q: i64, branch: Branch) -> Result<Vec<f64>> {
    validate_pq(p, q)?;
    let (lo, hi) = branch.interval();
    let steps = ((hi - lo) / GRID_STEP).ceil() as usize;
    let grid: Vec<f64> = (0..=steps)
        .map(|i| if i == steps { hi } else { lo + i as f64 * GRID_STEP })
        .collect();
    let values = grid
        .iter()
        .map(|&c| slope_defect(c, branch, p, q))
        .collect::<Result<Vec<_>>>()?;

    let mut roots: Vec<f64> = Vec::new();
    let mut push = |c: f64| {
        if !roots.iter().any(|r| (r - c).abs() < 1e-9) {
            roots.push(c);
        }
    };
    for (i, (&c, &f)) in grid.iter().zip(&values).enumerate() {
        if f.abs() <= 1e-13 {
            push(c);
            continue;
        }
        if let Some(&g) = values.get(i + 1) {
            if g.abs() > 1e-13 && f.signum() != g.signum() {
                push(bisect(grid[i], grid[i + 1], f, branch, p, q)?);
            }
        }
    }
    if roots.is_empty() {
        return Err(Error::SolverFailure {
            message: format!("no sign change of the slope equation for ({p}, {q}) on the {branch} branch"),
            iterations: grid.len(),
            last_iterate: vec![],
        });
    }
    Ok(roots)
}

fn bisect(mut lo: f64, mut hi: f64, mut f_lo: f64, branch: Branch, p: i64, q: i64) -> Result<f64> {
    for _ in 0..BISECTION_MAX {
        let mid = 0.5 * (lo + hi);
        let f_mid = slope_defect(mid, branch, p, q)?;
        if f_mid == 0.0 || hi - lo < BISECTION_TOL * 1e-3 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// First root of the slope equation on `branch`.
pub fn solve_c(p: i64, q: i64, branch: Branch) -> Result<f64> {
    Ok(solve_c_all(p, q, branch)?[0])
}

/// Reconstructs the Einstein metric (gauge `alpha = 1`) and its Einstein constant.
pub fn cr_to_metric(c: f64, branch: Branch, p: i64, q: i64) -> Result<(AWMetric, f64)> {
    validate_pq(p, q)?;
    let s = cr_solution_family(c, branch)?;
    let alpha = 1.0;
    let delta = s.a;
    let gamma = s.b;
    let plus = (3 * p + q) as f64;
    let beta = 2.0 * s.u * s.u * gamma / (plus * plus * delta);
    let lambda = s.lambda * alpha / (8.0 * gamma * delta);

    let qf = q as f64;
    let beta_alt = (s.a * s.v + s.b * s.u).powi(2) * alpha.powi(3) / (2.0 * gamma * delta * qf * qf);
    if (beta - beta_alt).abs() > 1e-8 * beta {
        return Err(Error::Consistency(format!(
            "c = {c} does not solve the slope equation for ({p}, {q}): beta {beta} vs {beta_alt}"
        )));
    }
    Ok((AWMetric::new(alpha, beta, gamma, delta, p, q)?, lambda))
}

/// `max |r_i - lambda|` over the four closed-form Ricci blocks.
pub fn einstein_defect(m: &AWMetric, lambda: f64) -> f64 {
    aw_ricci(m).iter().fold(0.0, |acc, r| acc.max((r - lambda).abs()))
}
