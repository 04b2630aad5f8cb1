use num_integer::Integer;

use crate::error::{parameter, Result};
use crate::homspace::{structure_triples, DiagonalMetric, IsotropyData};
use crate::liecore::{aw_basis, validate_pq, BackgroundForm};

/// Background form under which the closed-form Aloff-Wallach formulas hold.
pub const AW_FORM: BackgroundForm = BackgroundForm::Trace(4.0);

/// `g = alpha Q|m1 + beta Q|m2 + gamma Q|m3 + delta Q|m4` on `N^{pq0}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AWMetric {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub p: i64,
    pub q: i64,
}

impl AWMetric {
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64, p: i64, q: i64) -> Result<Self> {
        validate_pq(p, q)?;
        if [alpha, beta, gamma, delta].iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(parameter("Aloff-Wallach scales must be positive"));
        }
        Ok(Self {
            alpha,
            beta,
            gamma,
            delta,
            p,
            q,
        })
    }

    pub fn scales(&self) -> [f64; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }

    pub fn with_scales(&self, s: [f64; 4]) -> Result<Self> {
        Self::new(s[0], s[1], s[2], s[3], self.p, self.q)
    }

    /// `3p^2 + q^2`, the squared length of the unnormalised torus generator.
    pub fn torus_weight(&self) -> f64 {
        torus_weight(self.p, self.q)
    }

    /// The same metric in the scales of [`aw_isotropy`].
    pub fn to_diagonal(&self) -> DiagonalMetric {
        DiagonalMetric::new(vec![self.alpha, self.torus_weight() * self.beta, self.gamma, self.delta])
            .expect("validated scales")
    }

    pub fn from_diagonal(g: &DiagonalMetric, p: i64, q: i64) -> Result<Self> {
        let x = g.x();
        if x.len() != 4 {
            return Err(parameter("Aloff-Wallach metrics have four scales"));
        }
        Self::new(x[0], x[1] / torus_weight(p, q), x[2], x[3], p, q)
    }
}

pub(crate) fn torus_weight(p: i64, q: i64) -> f64 {
    (3 * p * p + q * q) as f64
}

/// Structure-constant data of `N^{pq0}` under [`AW_FORM`].
pub fn aw_isotropy(p: i64, q: i64) -> Result<IsotropyData> {
    structure_triples(&aw_basis(p, q)?, AW_FORM)
}

/// Converts `N_{k,l}` labels to the coprime slope `(p, q)`.
pub fn kl_to_pq(k: i64, l: i64) -> Result<(i64, i64)> {
    if l < 0 || k < l || (k == 0 && l == 0) {
        return Err(parameter(format!("(k, l) = ({k}, {l}) must satisfy k >= l >= 0, not both zero")));
    }
    if k.gcd(&l) != 1 {
        return Err(parameter(format!("(k, l) = ({k}, {l}) are not coprime")));
    }
    let (p, q) = (k - l, 3 * (k + l));
    let g = p.gcd(&q);
    Ok((p / g, q / g))
}

/// The four Ricci eigenvalues, one per summand.
pub fn aw_ricci(m: &AWMetric) -> [f64; 4] {
    let AWMetric {
        alpha: a,
        beta: b,
        gamma: c,
        delta: d,
        p,
        q,
    } = *m;
    let (q2, sp, sm) = weights(p, q);
    [
        0.75 / a + (a / (c * d) - c / (a * d) - d / (a * c)) / 8.0 - 0.25 * q2 * b / (a * a),
        0.25 * q2 * b / (a * a) + sp * b / (16.0 * c * c) + sm * b / (16.0 * d * d),
        0.75 / c + (c / (a * d) - a / (c * d) - d / (a * c)) / 8.0 - sp * b / (16.0 * c * c),
        0.75 / d + (d / (a * c) - a / (c * d) - c / (a * d)) / 8.0 - sm * b / (16.0 * d * d),
    ]
}

/// `(q^2, (3p+q)^2, (3p-q)^2)`.
pub(crate) fn weights(p: i64, q: i64) -> (f64, f64, f64) {
    let (pf, qf) = (p as f64, q as f64);
    (qf * qf, (3.0 * pf + qf).powi(2), (3.0 * pf - qf).powi(2))
}

pub fn aw_scalar(m: &AWMetric) -> f64 {
    let [a, b, c, d] = m.scales();
    let (q2, sp, sm) = weights(m.p, m.q);
    1.5 * (1.0 / a + 1.0 / c + 1.0 / d) - 0.25 * (a / (c * d) + c / (a * d) + d / (a * c))
        - 0.25 * q2 * b / (a * a)
        - sp * b / (16.0 * c * c)
        - sm * b / (16.0 * d * d)
}

/// Closed-form normalised total scalar curvature, `(alpha beta^(1/2) gamma delta)^(2/7) s`.
pub fn aw_stilde(m: &AWMetric) -> f64 {
    let [a, b, c, d] = m.scales();
    (a * b.sqrt() * c * d).powf(2.0 / 7.0) * aw_scalar(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homspace::{ricci_blocks, scalar_curvature};

    #[test]
    fn kl_examples() {
        assert_eq!(kl_to_pq(1, 1).unwrap(), (0, 1));
        assert_eq!(kl_to_pq(1, 0).unwrap(), (1, 3));
        assert_eq!(kl_to_pq(2, 1).unwrap(), (1, 9));
        assert!(kl_to_pq(2, 2).is_err());
        assert!(kl_to_pq(1, 2).is_err());
    }

    #[test]
    fn ricci_examples() {
        let e = AWMetric::new(1.0, 1.0, 0.5, 0.5, 0, 1).unwrap();
        for r in aw_ricci(&e) {
            assert!((r - 0.75).abs() < 1e-14);
        }
        assert!((aw_scalar(&e) - 5.25).abs() < 1e-14);
        let one = AWMetric::new(1.0, 1.0, 1.0, 1.0, 0, 1).unwrap();
        let r = aw_ricci(&one);
        assert!((r[0] - 0.375).abs() < 1e-14 && (r[1] - 0.375).abs() < 1e-14);
        assert!((aw_scalar(&one) - 3.375).abs() < 1e-14);
    }

    #[test]
    fn closed_form_matches_structure_constants() {
        for (p, q) in [(0, 1), (1, 3), (1, 4), (2, 7), (3, 11)] {
            let data = aw_isotropy(p, q).unwrap();
            let m = AWMetric::new(0.8, 1.7, 1.3, 0.45, p, q).unwrap();
            let g = m.to_diagonal();
            let s = aw_scalar(&m);
            assert!((scalar_curvature(&data, &g) - s).abs() < 1e-12 * s.abs(), "{p},{q}");
            for (a, b) in ricci_blocks(&data, &g).iter().zip(aw_ricci(&m)) {
                assert!((a - b).abs() < 1e-12 * (1.0 + b.abs()), "{p},{q}: {a} vs {b}");
            }
        }
    }
}
