use std::fmt;

use nalgebra::DMatrix;

use super::cmatrix::CMatrix;
use crate::error::{parameter, Result};

/// Classical matrix families supported by [`build_algebra`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Su,
    So,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Su => write!(f, "su"),
            Family::So => write!(f, "so"),
        }
    }
}

/// Ad-invariant inner product used as background metric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BackgroundForm {
    /// `-B(X, Y)` with `B` the Killing form computed as `tr(ad X ad Y)`.
    NegativeKilling,
    /// `-c * Re tr(XY)` in the defining matrix representation.
    Trace(f64),
}

/// A compact matrix Lie algebra given by an explicit basis.
///
/// The algebra may be a direct product of classical factors embedded block
/// diagonally. Basis matrices are mutually orthogonal for `Re tr(XY)`, which
/// lets coordinates be read off by projection.
#[derive(Debug, Clone)]
pub struct LieAlgebraSpec {
    factors: Vec<(Family, usize)>,
    basis: Vec<CMatrix>,
    norms: Vec<f64>,
}

pub fn build_algebra(family: Family, n: usize) -> Result<LieAlgebraSpec> {
    let basis = factor_basis(family, n)?;
    Ok(LieAlgebraSpec::from_orthogonal_basis(vec![(family, n)], basis))
}

/// Direct product of classical factors, realised block-diagonally.
pub fn build_product(factors: &[(Family, usize)]) -> Result<LieAlgebraSpec> {
    if factors.is_empty() {
        return Err(parameter("product algebra needs at least one factor"));
    }
    let size: usize = factors.iter().map(|&(_, n)| n).sum();
    let mut basis = Vec::new();
    let mut offset = 0;
    for &(family, n) in factors {
        for m in factor_basis(family, n)? {
            basis.push(m.embed(size, offset));
        }
        offset += n;
    }
    Ok(LieAlgebraSpec::from_orthogonal_basis(factors.to_vec(), basis))
}

fn factor_basis(family: Family, n: usize) -> Result<Vec<CMatrix>> {
    match family {
        Family::Su if n < 2 => Err(parameter(format!("su(n) needs n >= 2, got {n}"))),
        Family::So if n < 3 => Err(parameter(format!("so(n) needs n >= 3, got {n}"))),
        Family::Su => Ok(su_basis(n)),
        Family::So => Ok((0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| CMatrix::real(elementary_skew(n, i, j)))
            .collect()),
    }
}

/// `E_ij`: `+1` at `(i, j)`, `-1` at `(j, i)`.
pub fn elementary_skew(n: usize, i: usize, j: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    m[(i, j)] = 1.0;
    m[(j, i)] = -1.0;
    m
}

fn su_basis(n: usize) -> Vec<CMatrix> {
    let mut out = Vec::with_capacity(n * n - 1);
    for i in 0..n {
        for j in i + 1..n {
            out.push(CMatrix::real(elementary_skew(n, i, j)));
            let mut im = DMatrix::zeros(n, n);
            im[(i, j)] = 1.0;
            im[(j, i)] = 1.0;
            out.push(CMatrix::from_parts(DMatrix::zeros(n, n), im));
        }
    }
    for k in 1..n {
        let mut diag = vec![0.0; n];
        diag.iter_mut().take(k).for_each(|d| *d = 1.0);
        diag[k] = -(k as f64);
        out.push(CMatrix::minus_i_diag(&diag).scale(-1.0));
    }
    out
}

impl LieAlgebraSpec {
    fn from_orthogonal_basis(factors: Vec<(Family, usize)>, basis: Vec<CMatrix>) -> Self {
        let norms = basis.iter().map(|b| -b.re_trace_product(b)).collect();
        Self {
            factors,
            basis,
            norms,
        }
    }

    /// Family of the first factor; for simple algebras this is the family.
    pub fn family(&self) -> Family {
        self.factors[0].0
    }

    /// Rank parameter of the first factor.
    pub fn n(&self) -> usize {
        self.factors[0].1
    }

    pub fn factors(&self) -> &[(Family, usize)] {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn matrix_size(&self) -> usize {
        self.basis[0].dim()
    }

    pub fn basis(&self) -> &[CMatrix] {
        &self.basis
    }

    pub fn bracket(&self, x: &CMatrix, y: &CMatrix) -> CMatrix {
        x.commutator(y)
    }

    /// Coordinates of `x` in the stored basis, by orthogonal projection.
    pub fn coordinates(&self, x: &CMatrix) -> Vec<f64> {
        self.basis
            .iter()
            .zip(&self.norms)
            .map(|(b, nb)| -x.re_trace_product(b) / nb)
            .collect()
    }

    pub fn from_coordinates(&self, coords: &[f64]) -> CMatrix {
        let mut acc = CMatrix::zeros(self.matrix_size());
        for (b, c) in self.basis.iter().zip(coords) {
            acc = &acc + &b.scale(*c);
        }
        acc
    }

    /// Distance from `x` to the span of the basis, in Frobenius norm.
    pub fn span_residual(&self, x: &CMatrix) -> f64 {
        (x - &self.from_coordinates(&self.coordinates(x))).norm()
    }

    /// Largest [`span_residual`](Self::span_residual) over brackets of basis pairs.
    pub fn closure_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.basis.iter().enumerate() {
            for b in &self.basis[i + 1..] {
                worst = worst.max(self.span_residual(&a.commutator(b)));
            }
        }
        worst
    }

    /// The matrix of `ad x` in the stored basis.
    pub fn ad_matrix(&self, x: &CMatrix) -> DMatrix<f64> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for (k, b) in self.basis.iter().enumerate() {
            let col = self.coordinates(&x.commutator(b));
            for (r, v) in col.into_iter().enumerate() {
                m[(r, k)] = v;
            }
        }
        m
    }

    /// Killing form `tr(ad x ad y)`.
    pub fn killing(&self, x: &CMatrix, y: &CMatrix) -> f64 {
        self.basis
            .iter()
            .zip(&self.norms)
            .map(|(b, nb)| -x.commutator(&y.commutator(b)).re_trace_product(b) / nb)
            .sum()
    }

    pub fn form(&self, kind: BackgroundForm, x: &CMatrix, y: &CMatrix) -> f64 {
        match kind {
            BackgroundForm::NegativeKilling => -self.killing(x, y),
            BackgroundForm::Trace(c) => -c * x.re_trace_product(y),
        }
    }

    /// Gram matrix of the stored basis under `kind`.
    pub fn gram(&self, kind: BackgroundForm) -> DMatrix<f64> {
        let d = self.dim();
        DMatrix::from_fn(d, d, |i, j| self.form(kind, &self.basis[i], &self.basis[j]))
    }

    /// Ratio `-B(x, x) / Q(x, x)` where `Q` is the trace form with coefficient 1.
    pub fn killing_to_trace_ratio(&self, x: &CMatrix) -> f64 {
        -self.killing(x, x) / -x.re_trace_product(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::SymmetricEigen;

    #[test]
    fn dimensions() {
        for n in 2..6 {
            assert_eq!(build_algebra(Family::Su, n).unwrap().dim(), n * n - 1);
        }
        for n in 3..7 {
            assert_eq!(build_algebra(Family::So, n).unwrap().dim(), n * (n - 1) / 2);
        }
        assert!(build_algebra(Family::Su, 1).is_err());
        assert!(build_algebra(Family::So, 2).is_err());
    }

    #[test]
    fn closure_and_jacobi() {
        for (family, n) in [(Family::Su, 3), (Family::So, 5), (Family::Su, 2)] {
            let g = build_algebra(family, n).unwrap();
            assert!(g.closure_residual() <= 1e-12);
            let b = g.basis();
            for x in b {
                for y in b {
                    let anti = &x.commutator(y) + &y.commutator(x);
                    assert!(anti.norm() <= 1e-12);
                    for z in b.iter().take(4) {
                        let j1 = x.commutator(&y.commutator(z));
                        let j2 = y.commutator(&z.commutator(x));
                        let j3 = z.commutator(&x.commutator(y));
                        assert!((&(&j1 + &j2) + &j3).norm() <= 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn killing_is_scalar_multiple_of_trace() {
        let su3 = build_algebra(Family::Su, 3).unwrap();
        for x in su3.basis() {
            assert!((su3.killing_to_trace_ratio(x) - 6.0).abs() <= 1e-12 * 6.0);
        }
        for n in 4..8 {
            let so = build_algebra(Family::So, n).unwrap();
            for x in so.basis() {
                let r = so.killing_to_trace_ratio(x);
                assert!((r - (n as f64 - 2.0)).abs() <= 1e-12 * r);
            }
        }
    }

    #[test]
    fn background_forms_positive_definite() {
        let g = build_algebra(Family::Su, 3).unwrap();
        for kind in [BackgroundForm::NegativeKilling, BackgroundForm::Trace(0.5)] {
            let gram = g.gram(kind);
            assert!((&gram - gram.transpose()).norm() <= 1e-12);
            let eig = SymmetricEigen::new(gram);
            assert!(eig.eigenvalues.iter().all(|&e| e > 0.0));
        }
    }

    #[test]
    fn product_factors_commute() {
        let g = build_product(&[(Family::Su, 2), (Family::Su, 2)]).unwrap();
        assert_eq!(g.dim(), 6);
        assert_eq!(g.matrix_size(), 4);
        let b = g.basis();
        assert!(b[0].commutator(&b[3]).norm() == 0.0);
        assert!(g.closure_residual() <= 1e-12);
        for x in b {
            assert!((g.killing_to_trace_ratio(x) - 4.0).abs() <= 1e-12);
        }
    }
}
