use crate::error::{consistency, Result};
use crate::liecore::{AdaptedBasis, BackgroundForm, CMatrix};

/// Bracket data of a diagonal decomposition `m = m_1 + ... + m_r`.
///
/// `b[i]` is the constant with `-B = b[i] Q` on `m_i`, and `t[i][j][k]` is
/// `sum Q([e_a, e_b], e_c)^2` over `Q`-orthonormal vectors `e_a` in `m_i`,
/// `e_b` in `m_j`, `e_c` in `m_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct IsotropyData {
    dims: Vec<usize>,
    b: Vec<f64>,
    t: Vec<f64>,
}

impl IsotropyData {
    /// `t` is indexed row-major as `t[(i * r + j) * r + k]`.
    pub fn new(dims: Vec<usize>, b: Vec<f64>, t: Vec<f64>) -> Result<Self> {
        let r = dims.len();
        if b.len() != r || t.len() != r * r * r {
            return Err(consistency(format!(
                "{r} summands need {r} background scalars and {} triples",
                r * r * r
            )));
        }
        if dims.contains(&0) || dims.iter().sum::<usize>() < 2 {
            return Err(consistency("summands must be nonempty with total dimension >= 2"));
        }
        let data = Self { dims, b, t };
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let v = data.t(i, j, k);
                    if v < -1e-12 {
                        return Err(consistency(format!("negative triple [{i}{j}{k}] = {v}")));
                    }
                    for w in [data.t(j, i, k), data.t(i, k, j), data.t(k, j, i)] {
                        if (v - w).abs() > 1e-10 * (1.0 + v.abs()) {
                            return Err(consistency(format!(
                                "triple [{i}{j}{k}] = {v} is not permutation symmetric"
                            )));
                        }
                    }
                }
            }
        }
        Ok(data)
    }

    pub fn r(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn t(&self, i: usize, j: usize, k: usize) -> f64 {
        let r = self.r();
        self.t[(i * r + j) * r + k]
    }
}

/// `Q`-orthonormal copies of the complement vectors, summand by summand.
pub(crate) fn orthonormal_complement(basis: &AdaptedBasis, form: BackgroundForm) -> Vec<(usize, CMatrix)> {
    basis
        .complement()
        .map(|(i, v)| (i, v.scale(1.0 / basis.algebra.form(form, v, v).sqrt())))
        .collect()
}

pub fn structure_triples(basis: &AdaptedBasis, form: BackgroundForm) -> Result<IsotropyData> {
    basis.check_orthogonal(form, 1e-10)?;
    let g = &basis.algebra;
    let r = basis.summands.len();
    let dims = basis.dims();
    let e = orthonormal_complement(basis, form);

    let mut b = Vec::with_capacity(r);
    for (i, summand) in basis.summands.iter().enumerate() {
        let ratios: Vec<f64> = summand
            .vectors
            .iter()
            .map(|v| g.form(BackgroundForm::NegativeKilling, v, v) / g.form(form, v, v))
            .collect();
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        if ratios.iter().any(|x| (x - mean).abs() > 1e-10 * mean.abs()) {
            return Err(consistency(format!(
                "Killing form is not a multiple of the background form on summand {i}"
            )));
        }
        b.push(mean);
    }

    let mut t = vec![0.0; r * r * r];
    for (ia, (i, x)) in e.iter().enumerate() {
        for (j, y) in e.iter().skip(ia + 1).map(|(j, y)| (*j, y)) {
            let br = x.commutator(y);
            for (k, z) in &e {
                let c = g.form(form, &br, z);
                let c2 = c * c;
                if c2 == 0.0 {
                    continue;
                }
                t[(i * r + j) * r + k] += c2;
                t[(j * r + i) * r + k] += c2;
            }
        }
    }
    IsotropyData::new(dims, b, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::{aw_basis, stiefel_basis};

    #[test]
    fn aw_dims_and_symmetry() {
        let data = structure_triples(&aw_basis(0, 1).unwrap(), BackgroundForm::Trace(6.0)).unwrap();
        assert_eq!(data.dims(), &[2, 1, 2, 2]);
        assert_eq!(data.total_dim(), 7);
        for &b in data.b() {
            assert!((b - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn stiefel_background_scalar() {
        for n in 3..7 {
            let data = structure_triples(&stiefel_basis(n).unwrap(), BackgroundForm::Trace(0.5)).unwrap();
            for &b in data.b() {
                assert!((b - 2.0 * (n as f64 - 1.0)).abs() < 1e-10);
            }
            assert!((data.t(0, 1, 2) - (n as f64 - 1.0)).abs() < 1e-10);
            assert!(data.t(1, 1, 1).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_asymmetric_triples() {
        let mut t = vec![0.0; 8];
        t[1] = 1.0;
        assert!(IsotropyData::new(vec![1, 1], vec![1.0, 1.0], t).is_err());
    }
}
