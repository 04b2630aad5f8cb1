use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{consistency, parameter, Result};

pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Cartan type of a simple root system, with Bourbaki numbering of simple roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootType {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    G2,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootType::A(n) => write!(f, "A{n}"),
            RootType::B(n) => write!(f, "B{n}"),
            RootType::D(n) => write!(f, "D{n}"),
            RootType::E6 => write!(f, "E6"),
            RootType::E7 => write!(f, "E7"),
            RootType::G2 => write!(f, "G2"),
        }
    }
}

impl RootType {
    /// Root type of `so(n)` for `n >= 5`.
    pub fn orthogonal(n: usize) -> Result<Self> {
        match n {
            0..=4 => Err(parameter(format!("so({n}) is not handled as a simple root system"))),
            _ if n % 2 == 1 => Ok(RootType::B((n - 1) / 2)),
            _ => Ok(RootType::D(n / 2)),
        }
    }

    pub fn rank(self) -> usize {
        match self {
            RootType::A(n) | RootType::B(n) | RootType::D(n) => n,
            RootType::E6 => 6,
            RootType::E7 => 7,
            RootType::G2 => 2,
        }
    }

    /// Gram matrix of the simple roots, long roots of squared length 2.
    fn simple_gram(self) -> Result<Vec<Vec<BigRational>>> {
        let r = self.rank();
        let mut b = vec![vec![BigRational::zero(); r]; r];
        let link = |b: &mut Vec<Vec<BigRational>>, i: usize, j: usize| {
            b[i][j] = int(-1);
            b[j][i] = int(-1);
        };
        let chain = |b: &mut Vec<Vec<BigRational>>, nodes: &[usize]| {
            for w in nodes.windows(2) {
                link(b, w[0], w[1]);
            }
        };
        match self {
            RootType::A(n) if n >= 1 => {
                (0..n).for_each(|i| b[i][i] = int(2));
                chain(&mut b, &(0..n).collect::<Vec<_>>());
            }
            RootType::B(n) if n >= 2 => {
                (0..n).for_each(|i| b[i][i] = int(2));
                b[n - 1][n - 1] = int(1);
                chain(&mut b, &(0..n).collect::<Vec<_>>());
            }
            RootType::D(n) if n >= 3 => {
                (0..n).for_each(|i| b[i][i] = int(2));
                chain(&mut b, &(0..n - 1).collect::<Vec<_>>());
                link(&mut b, n - 3, n - 1);
            }
            RootType::E6 | RootType::E7 => {
                (0..r).for_each(|i| b[i][i] = int(2));
                let mut nodes = vec![0, 2];
                nodes.extend(3..r);
                chain(&mut b, &nodes);
                link(&mut b, 1, 3);
            }
            RootType::G2 => {
                b[0][0] = rat(2, 3);
                b[1][1] = int(2);
                link(&mut b, 0, 1);
            }
            _ => return Err(parameter(format!("root system {self} is out of range"))),
        }
        Ok(b)
    }
}

/// Exact root data of a simple compact Lie algebra.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub kind: RootType,
    /// `C[i][j] = 2 (a_i, a_j) / (a_j, a_j)`.
    pub cartan: Vec<Vec<i64>>,
    /// Inner products of simple roots.
    pub simple_gram: Vec<Vec<BigRational>>,
    /// Inner products of fundamental weights.
    pub weight_gram: Vec<Vec<BigRational>>,
    /// Positive roots in simple-root coordinates, sorted by height.
    pub positive_roots: Vec<Vec<i64>>,
    pub highest_root: Vec<i64>,
    pub dual_coxeter: i64,
}

fn invert(m: &[Vec<BigRational>]) -> Result<Vec<Vec<BigRational>>> {
    let n = m.len();
    let scale = m.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    // Fraction-free Gauss-Jordan on [scale * m | I]; every division below is exact.
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigInt> = row.iter().map(|x| (x * &scale).to_integer()).collect();
            r.extend((0..n).map(|j| BigInt::from(u8::from(i == j))));
            r
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n)
            .find(|&r| !a[r][k].is_zero())
            .ok_or_else(|| consistency("singular Gram matrix"))?;
        a.swap(k, pivot);
        let (head, tail) = a.split_at_mut(k);
        let (pivot_row, tail) = tail.split_first_mut().expect("row k exists");
        let akk = pivot_row[k].clone();
        for row in head.iter_mut().chain(tail.iter_mut()) {
            let f = std::mem::take(&mut row[k]);
            for (j, v) in row.iter_mut().enumerate() {
                if j == k {
                    continue;
                }
                let mut t = &akk * &*v;
                if !f.is_zero() && !pivot_row[j].is_zero() {
                    t -= &f * &pivot_row[j];
                }
                *v = t / &prev;
            }
        }
        prev = akk;
    }
    let det = BigRational::from_integer(prev) / BigRational::from_integer(scale);
    Ok(a
        .into_iter()
        .map(|row| row[n..].iter().map(|x| BigRational::from_integer(x.clone()) / det.clone()).collect())
        .collect())
}

impl RootSystem {
    pub fn new(kind: RootType) -> Result<Self> {
        let b = kind.simple_gram()?;
        let r = b.len();
        let cartan: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let c = int(2) * b[i][j].clone() / b[j][j].clone();
                        debug_assert!(c.is_integer());
                        i64::try_from(c.to_integer()).expect("small Cartan entry")
                    })
                    .collect()
            })
            .collect();
        let binv = invert(&b)?;
        let half: Vec<BigRational> = (0..r).map(|j| b[j][j].clone() / int(2)).collect();
        let weight_gram = (0..r)
            .map(|i| (0..r).map(|j| half[i].clone() * binv[i][j].clone() * half[j].clone()).collect())
            .collect();

        let positive_roots = enumerate_positive_roots(&cartan);
        let highest_root = positive_roots.last().expect("nonempty").clone();
        let mut dual = BigRational::one();
        for (i, c) in highest_root.iter().enumerate() {
            dual += int(*c) * half[i].clone();
        }
        if !dual.is_integer() {
            return Err(consistency(format!("non-integral dual Coxeter number for {kind}")));
        }
        let dual_coxeter = i64::try_from(dual.to_integer()).expect("small");
        let out = Self {
            kind,
            cartan,
            simple_gram: b,
            weight_gram,
            positive_roots,
            highest_root,
            dual_coxeter,
        };
        out.check()?;
        Ok(out)
    }

    fn check(&self) -> Result<()> {
        let theta = self.root_to_weight(&self.highest_root);
        if self.inner(&theta, &theta) != int(2) {
            return Err(consistency("highest root does not have squared length 2"));
        }
        if self.casimir_prime(&theta) != int(2 * self.dual_coxeter) {
            return Err(consistency("adjoint Casimir differs from twice the dual Coxeter number"));
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// Fundamental-weight coordinates of a root given in simple-root coordinates.
    pub fn root_to_weight(&self, root: &[i64]) -> Vec<i64> {
        (0..self.rank())
            .map(|j| root.iter().enumerate().map(|(i, n)| n * self.cartan[i][j]).sum())
            .collect()
    }

    pub fn highest_root_weight(&self) -> Vec<i64> {
        self.root_to_weight(&self.highest_root)
    }

    /// `<x, y>` for weights in fundamental coordinates.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if *yj != 0 {
                    acc += self.weight_gram[i][j].clone() * int(xi * yj);
                }
            }
        }
        acc
    }

    /// `<lambda, lambda + 2 delta>` with `delta` the half-sum of positive roots.
    pub fn casimir_prime(&self, lambda: &[i64]) -> BigRational {
        let shifted: Vec<i64> = lambda.iter().map(|l| l + 2).collect();
        self.inner(lambda, &shifted)
    }

    /// Weyl dimension formula.
    pub fn dimension(&self, lambda: &[i64]) -> BigInt {
        let mut num = BigRational::one();
        for alpha in &self.positive_roots {
            let mut top = BigRational::zero();
            let mut bottom = BigRational::zero();
            for (k, n) in alpha.iter().enumerate() {
                let w = int(*n) * self.simple_gram[k][k].clone() / int(2);
                top += w.clone() * int(lambda[k] + 1);
                bottom += w;
            }
            num *= top / bottom;
        }
        debug_assert!(num.is_integer());
        num.to_integer()
    }
}

fn enumerate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let columns: Vec<Vec<(usize, i64)>> = (0..r)
        .map(|j| (0..r).filter(|&i| cartan[i][j] != 0).map(|i| (i, cartan[i][j])).collect())
        .collect();
    let pairing = |root: &[i64], j: usize| -> i64 { columns[j].iter().map(|&(i, c)| root[i] * c).sum() };
    let mut roots: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|k| i64::from(k == i)).collect())
        .collect();
    let mut known: HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut layer = roots.clone();
    while !layer.is_empty() {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in &layer {
            for j in 0..r {
                // Length of the alpha_j string below beta.
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[j] -= 1;
                    if down[j] >= 0 && known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing(beta, j) > 0 {
                    let mut up = beta.clone();
                    up[j] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        roots.extend(next.iter().cloned());
        layer = next;
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_types() -> Vec<RootType> {
        vec![
            RootType::A(1),
            RootType::A(2),
            RootType::A(5),
            RootType::B(2),
            RootType::B(4),
            RootType::D(4),
            RootType::D(5),
            RootType::E6,
            RootType::E7,
            RootType::G2,
        ]
    }

    #[test]
    fn root_counts_and_dual_coxeter() {
        let expected = [
            (1, 2),
            (3, 3),
            (15, 6),
            (4, 3),
            (16, 7),
            (12, 6),
            (20, 8),
            (36, 12),
            (63, 18),
            (6, 4),
        ];
        for (kind, (count, h)) in all_types().into_iter().zip(expected) {
            let rs = RootSystem::new(kind).unwrap();
            assert_eq!(rs.positive_roots.len(), count, "{kind}");
            assert_eq!(rs.dual_coxeter, h, "{kind}");
        }
    }

    #[test]
    fn adjoint_dimension() {
        for kind in all_types() {
            let rs = RootSystem::new(kind).unwrap();
            let adj = rs.dimension(&rs.highest_root_weight());
            assert_eq!(adj, BigInt::from(2 * rs.positive_roots.len() + rs.rank()), "{kind}");
        }
    }

    #[test]
    fn small_representations() {
        let e6 = RootSystem::new(RootType::E6).unwrap();
        assert_eq!(e6.dimension(&[1, 0, 0, 0, 0, 0]), BigInt::from(27));
        let e7 = RootSystem::new(RootType::E7).unwrap();
        assert_eq!(e7.dimension(&[0, 0, 0, 0, 0, 0, 1]), BigInt::from(56));
        let b2 = RootSystem::new(RootType::B(2)).unwrap();
        assert_eq!(b2.dimension(&[1, 0]), BigInt::from(5));
        let g2 = RootSystem::new(RootType::G2).unwrap();
        assert_eq!(g2.dimension(&[1, 0]), BigInt::from(7));
        assert_eq!(RootType::orthogonal(6).unwrap(), RootType::D(3));
        assert!(RootType::orthogonal(4).is_err());
    }
}
