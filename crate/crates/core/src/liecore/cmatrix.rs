use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;

/// Square complex matrix stored as a pair of real matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    pub re: DMatrix<f64>,
    pub im: DMatrix<f64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            re: DMatrix::zeros(n, n),
            im: DMatrix::zeros(n, n),
        }
    }

    pub fn real(re: DMatrix<f64>) -> Self {
        let (r, c) = re.shape();
        Self {
            re,
            im: DMatrix::zeros(r, c),
        }
    }

    pub fn from_parts(re: DMatrix<f64>, im: DMatrix<f64>) -> Self {
        debug_assert_eq!(re.shape(), im.shape());
        Self { re, im }
    }

    /// `-i * diag(entries)`, the shape of every torus generator in this crate.
    pub fn minus_i_diag(entries: &[f64]) -> Self {
        let n = entries.len();
        let mut im = DMatrix::zeros(n, n);
        for (k, e) in entries.iter().enumerate() {
            im[(k, k)] = -e;
        }
        Self {
            re: DMatrix::zeros(n, n),
            im,
        }
    }

    pub fn dim(&self) -> usize {
        self.re.nrows()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            re: &self.re * s,
            im: &self.im * s,
        }
    }

    /// Complex trace as `(re, im)`.
    pub fn trace(&self) -> (f64, f64) {
        (self.re.trace(), self.im.trace())
    }

    /// Real part of `tr(self * other)` without forming the product.
    pub fn re_trace_product(&self, other: &Self) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for i in 0..n {
            for k in 0..n {
                acc += self.re[(i, k)] * other.re[(k, i)] - self.im[(i, k)] * other.im[(k, i)];
            }
        }
        acc
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        (self.re.norm_squared() + self.im.norm_squared()).sqrt()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self {
            re: self.re.transpose(),
            im: -self.im.transpose(),
        }
    }

    /// Embeds `self` as a diagonal block of an `n x n` zero matrix starting at `offset`.
    pub fn embed(&self, n: usize, offset: usize) -> Self {
        let mut out = Self::zeros(n);
        let k = self.dim();
        out.re.view_mut((offset, offset), (k, k)).copy_from(&self.re);
        out.im.view_mut((offset, offset), (k, k)).copy_from(&self.im);
        out
    }
}

impl<'a> Mul<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &'a CMatrix) -> CMatrix {
        CMatrix {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl<'a> Add<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &'a CMatrix) -> CMatrix {
        CMatrix {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &'a CMatrix) -> CMatrix {
        CMatrix {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        CMatrix {
            re: -&self.re,
            im: -&self.im,
        }
    }
}
