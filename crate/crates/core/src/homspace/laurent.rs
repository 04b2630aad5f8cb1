use std::collections::BTreeMap;

/// Finite sum `sum c * prod x_i^{e_i}` with real exponents.
#[derive(Debug, Clone, PartialEq)]
pub struct Laurent {
    terms: Vec<(f64, Vec<f64>)>,
}

impl Laurent {
    /// Collects integer-exponent terms, merging equal monomials.
    pub fn from_integer_terms(r: usize, terms: impl IntoIterator<Item = (f64, Vec<i32>)>) -> Self {
        let mut merged: BTreeMap<Vec<i32>, f64> = BTreeMap::new();
        for (c, e) in terms {
            debug_assert_eq!(e.len(), r);
            *merged.entry(e).or_insert(0.0) += c;
        }
        Self {
            terms: merged
                .into_iter()
                .filter(|(_, c)| *c != 0.0)
                .map(|(e, c)| (c, e.into_iter().map(f64::from).collect()))
                .collect(),
        }
    }

    /// Multiplies every term by `prod x_i^{shift_i}`.
    pub fn shifted(&self, shift: &[f64]) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(c, e)| (*c, e.iter().zip(shift).map(|(a, b)| a + b).collect()))
                .collect(),
        }
    }

    pub fn terms(&self) -> &[(f64, Vec<f64>)] {
        &self.terms
    }

    fn monomial(e: &[f64], x: &[f64]) -> f64 {
        e.iter()
            .zip(x)
            .map(|(&p, &v)| if p == 0.0 { 1.0 } else { v.powf(p) })
            .product()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|(c, e)| c * Self::monomial(e, x)).sum()
    }

    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; x.len()];
        for (c, e) in &self.terms {
            let m = c * Self::monomial(e, x);
            for (i, gi) in g.iter_mut().enumerate() {
                *gi += m * e[i] / x[i];
            }
        }
        g
    }

    /// Row-major Hessian.
    pub fn hessian(&self, x: &[f64]) -> Vec<f64> {
        let r = x.len();
        let mut h = vec![0.0; r * r];
        for (c, e) in &self.terms {
            let m = c * Self::monomial(e, x);
            for i in 0..r {
                for j in 0..r {
                    let diag = if i == j { e[i] } else { 0.0 };
                    h[i * r + j] += m * (e[i] * e[j] - diag) / (x[i] * x[j]);
                }
            }
        }
        h
    }
}
