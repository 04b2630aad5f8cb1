use nalgebra::DMatrix;
use num_integer::Integer;

use super::algebra::{build_algebra, build_product, elementary_skew, BackgroundForm, Family, LieAlgebraSpec};
use super::cmatrix::CMatrix;
use crate::error::{consistency, parameter, Result};

#[derive(Debug, Clone)]
pub struct Summand {
    pub label: String,
    pub vectors: Vec<CMatrix>,
}

impl Summand {
    fn new(label: &str, vectors: Vec<CMatrix>) -> Self {
        Self {
            label: label.to_string(),
            vectors,
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

/// Basis of `g = h + m_1 + ... + m_r` adapted to a reductive decomposition.
#[derive(Debug, Clone)]
pub struct AdaptedBasis {
    pub algebra: LieAlgebraSpec,
    pub isotropy: Vec<CMatrix>,
    pub summands: Vec<Summand>,
}

impl AdaptedBasis {
    pub fn dims(&self) -> Vec<usize> {
        self.summands.iter().map(Summand::dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.summands.iter().map(Summand::dim).sum()
    }

    /// All complement vectors in summand order, tagged with their summand index.
    pub fn complement(&self) -> impl Iterator<Item = (usize, &CMatrix)> {
        self.summands
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.vectors.iter().map(move |v| (i, v)))
    }

    /// Largest normalised off-diagonal entry of the Gram matrix of all adapted vectors.
    pub fn orthogonality_defect(&self, form: BackgroundForm) -> f64 {
        let all: Vec<&CMatrix> = self
            .isotropy
            .iter()
            .chain(self.complement().map(|(_, v)| v))
            .collect();
        let norms: Vec<f64> = all.iter().map(|v| self.algebra.form(form, v, v)).collect();
        let mut worst: f64 = 0.0;
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                let g = self.algebra.form(form, all[i], all[j]);
                worst = worst.max(g.abs() / (norms[i] * norms[j]).sqrt());
            }
        }
        worst
    }

    pub fn check_orthogonal(&self, form: BackgroundForm, tol: f64) -> Result<()> {
        let defect = self.orthogonality_defect(form);
        if defect > tol {
            return Err(consistency(format!(
                "adapted vectors are not orthogonal: defect {defect:.3e} exceeds {tol:.1e}"
            )));
        }
        Ok(())
    }
}

fn imaginary_symmetric(n: usize, i: usize, j: usize, value: f64) -> CMatrix {
    let mut im = DMatrix::zeros(n, n);
    im[(i, j)] = value;
    im[(j, i)] = value;
    CMatrix::from_parts(DMatrix::zeros(n, n), im)
}

/// The six off-diagonal generators `X_1, X_2, X_4, X_5, X_6, X_7` of `su(3)`.
fn gell_mann_offdiagonal() -> [CMatrix; 6] {
    let x = |i, j| imaginary_symmetric(3, i, j, -0.5);
    let y = |i, j| CMatrix::real(elementary_skew(3, i, j) * -0.5);
    [x(0, 1), y(0, 1), x(0, 2), y(0, 2), x(1, 2), y(1, 2)]
}

/// Circle generator `N` and its torus complement `Z` for the slope `(p, q)`.
///
/// Accepts any `(p, q) != (0, 0)`; sign conventions outside the normalised
/// range are used by the rotated decomposition on `N^{1,3}`.
pub fn aw_torus(p: i64, q: i64) -> (CMatrix, CMatrix) {
    let (pf, qf) = (p as f64, q as f64);
    let r = (3.0 * pf * pf + qf * qf).sqrt();
    let s3 = 3f64.sqrt();
    let n = CMatrix::minus_i_diag(&[
        -s3 / 6.0 * (qf - 3.0 * pf) / r,
        -s3 / 6.0 * (qf + 3.0 * pf) / r,
        s3 / 3.0 * qf / r,
    ]);
    let z = CMatrix::minus_i_diag(&[(pf + qf) / 2.0 / r, (pf - qf) / 2.0 / r, -pf / r]);
    (n, z)
}

/// Adapted basis of `su(3)` for the Aloff-Wallach space `N^{pq0}`.
///
/// Summands are `m1 = {X1, X2}`, `m2 = {Z}`, `m3 = {X4, X5}`, `m4 = {X6, X7}`.
pub fn aw_basis(p: i64, q: i64) -> Result<AdaptedBasis> {
    validate_pq(p, q)?;
    let (n, z) = aw_torus(p, q);
    let [x1, x2, x4, x5, x6, x7] = gell_mann_offdiagonal();
    Ok(AdaptedBasis {
        algebra: build_algebra(Family::Su, 3)?,
        isotropy: vec![n],
        summands: vec![
            Summand::new("m1", vec![x1, x2]),
            Summand::new("m2", vec![z]),
            Summand::new("m3", vec![x4, x5]),
            Summand::new("m4", vec![x6, x7]),
        ],
    })
}

pub fn validate_pq(p: i64, q: i64) -> Result<()> {
    if p < 0 || q < 3 * p || (p == 0 && q == 0) {
        return Err(parameter(format!(
            "(p, q) = ({p}, {q}) must satisfy p >= 0 and q >= 3p, not both zero"
        )));
    }
    if p.gcd(&q) != 1 {
        return Err(parameter(format!("(p, q) = ({p}, {q}) are not coprime")));
    }
    Ok(())
}

/// Adapted basis of `so(n+1)` for the Stiefel manifold `SO(n+1)/SO(n-1)`.
///
/// Summands are `p0 = {E_12}`, `p1 = {E_1,k}`, `p2 = {E_2,k}` for `k = 3..n+1`.
pub fn stiefel_basis(n: usize) -> Result<AdaptedBasis> {
    if n < 3 {
        return Err(parameter(format!("Stiefel basis needs n >= 3, got {n}")));
    }
    let size = n + 1;
    let e = |i, j| CMatrix::real(elementary_skew(size, i, j));
    let isotropy = (2..size)
        .flat_map(|i| (i + 1..size).map(move |j| (i, j)))
        .map(|(i, j)| e(i, j))
        .collect();
    Ok(AdaptedBasis {
        algebra: build_algebra(Family::So, size)?,
        isotropy,
        summands: vec![
            Summand::new("p0", vec![e(0, 1)]),
            Summand::new("p1", (2..size).map(|k| e(0, k)).collect()),
            Summand::new("p2", (2..size).map(|k| e(1, k)).collect()),
        ],
    })
}

/// Rotated decomposition of `su(3)` on `N^{1,3}` mixing `m1` and `m4` by `angle`.
///
/// The torus is taken with slope `(-1, 3)`, for which `m1` and `m4` carry the
/// same circle weight; this is `N^{1,3}` with the first two coordinates swapped.
pub fn nikonorov_basis(angle: f64) -> Result<AdaptedBasis> {
    let (n, z) = aw_torus(-1, 3);
    let [x1, x2, x4, x5, x6, x7] = gell_mann_offdiagonal();
    let (c, s) = (angle.cos(), angle.sin());
    let mix = |a: &CMatrix, ca: f64, b: &CMatrix, cb: f64| &a.scale(2.0 * ca) + &b.scale(2.0 * cb);
    let y1 = mix(&x2, -c, &x7, -s);
    let y2 = mix(&x1, -c, &x6, -s);
    let y3 = mix(&x2, s, &x7, -c);
    let y4 = mix(&x1, s, &x6, -c);
    Ok(AdaptedBasis {
        algebra: build_algebra(Family::Su, 3)?,
        isotropy: vec![n],
        summands: vec![
            Summand::new("p1", vec![y1, y2]),
            Summand::new("p2", vec![y3, y4]),
            Summand::new("p3", vec![x4, x5]),
            Summand::new("p4", vec![z]),
        ],
    })
}

/// `SU(2)^3 / diag SU(2)` with the single complement summand.
pub fn triple_s3_basis() -> Result<AdaptedBasis> {
    let algebra = build_product(&[(Family::Su, 2); 3])?;
    let su2 = build_algebra(Family::Su, 2)?;
    let place = |parts: [f64; 3], e: &CMatrix| {
        let mut acc = CMatrix::zeros(6);
        for (k, w) in parts.iter().enumerate() {
            acc = &acc + &e.scale(*w).embed(6, 2 * k);
        }
        acc
    };
    let isotropy = su2.basis().iter().map(|e| place([1.0, 1.0, 1.0], e)).collect();
    let vectors = su2
        .basis()
        .iter()
        .flat_map(|e| [place([1.0, -1.0, 0.0], e), place([1.0, 1.0, -2.0], e)])
        .collect();
    Ok(AdaptedBasis {
        algebra,
        isotropy,
        summands: vec![Summand::new("m", vectors)],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q6: BackgroundForm = BackgroundForm::Trace(6.0);

    #[test]
    fn aw_normalisation() {
        for (p, q) in [(0, 1), (1, 3), (1, 4), (2, 7), (1, 11)] {
            let b = aw_basis(p, q).unwrap();
            let n = &b.isotropy[0];
            let z = &b.summands[1].vectors[0];
            assert!((b.algebra.form(Q6, n, n) - 3.0).abs() < 1e-12);
            assert!((b.algebra.form(Q6, z, z) - 3.0).abs() < 1e-12);
            assert!(b.algebra.form(Q6, n, z).abs() < 1e-12);
            b.check_orthogonal(Q6, 1e-12).unwrap();
            assert_eq!(b.total_dim(), 7);
        }
    }

    #[test]
    fn aw_x1_norm_matches_killing() {
        let b = aw_basis(0, 1).unwrap();
        let x1 = &b.summands[0].vectors[0];
        assert!((b.algebra.form(Q6, x1, x1) - 3.0).abs() < 1e-12);
        let k = b.algebra.form(BackgroundForm::NegativeKilling, x1, x1);
        assert!((k - 3.0).abs() < 1e-12);
    }

    #[test]
    fn aw_rejects_bad_parameters() {
        assert!(aw_basis(2, 6).is_err());
        assert!(aw_basis(1, 1).is_err());
        assert!(aw_basis(0, 0).is_err());
        assert!(aw_basis(-1, 3).is_err());
    }

    #[test]
    fn stiefel_blocks() {
        assert_eq!(stiefel_basis(3).unwrap().total_dim(), 5);
        let b = stiefel_basis(4).unwrap();
        assert_eq!(b.dims(), vec![1, 3, 3]);
        let qp = BackgroundForm::Trace(0.5);
        b.check_orthogonal(qp, 1e-12).unwrap();
        for (_, v) in b.complement() {
            assert!((b.algebra.form(qp, v, v) - 1.0).abs() < 1e-12);
        }
        assert!(stiefel_basis(2).is_err());
    }

    #[test]
    fn rotated_and_product_bases_orthogonal() {
        for angle in [0.0, 0.3, std::f64::consts::FRAC_PI_4] {
            nikonorov_basis(angle)
                .unwrap()
                .check_orthogonal(BackgroundForm::Trace(0.5), 1e-12)
                .unwrap();
        }
        let t = triple_s3_basis().unwrap();
        assert_eq!(t.total_dim(), 6);
        t.check_orthogonal(BackgroundForm::Trace(1.0), 1e-12).unwrap();
    }
}
