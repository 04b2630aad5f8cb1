use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::roots::{int, RootSystem, RootType};
use crate::error::{consistency, parameter, Result};

/// A root system together with the scale `kappa` relating the negative
/// Killing form to the normalized form: `Q = kappa Q'`.
#[derive(Debug, Clone)]
pub struct GroupScale {
    pub roots: RootSystem,
    pub kappa: BigRational,
}

impl GroupScale {
    pub fn new(kind: RootType) -> Result<Self> {
        let roots = RootSystem::new(kind)?;
        let kappa = int(2 * roots.dual_coxeter);
        Ok(Self { roots, kappa })
    }

    pub fn kind(&self) -> RootType {
        self.roots.kind
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    /// Fundamental weight `omega_index` (1-based) in fundamental coordinates.
    pub fn fundamental(&self, index: usize) -> Result<Vec<i64>> {
        if index == 0 || index > self.rank() {
            return Err(parameter(format!("{} has no fundamental weight {index}", self.kind())));
        }
        Ok((1..=self.rank()).map(|k| i64::from(k == index)).collect())
    }

    pub fn adjoint(&self) -> Vec<i64> {
        self.roots.highest_root_weight()
    }

    pub fn dimension(&self, weight: &[i64]) -> Result<BigInt> {
        self.check_weight(weight)?;
        Ok(self.roots.dimension(weight))
    }

    fn check_weight(&self, weight: &[i64]) -> Result<()> {
        if weight.len() != self.rank() {
            return Err(parameter(format!(
                "{} weights have {} coordinates, got {}",
                self.kind(),
                self.rank(),
                weight.len()
            )));
        }
        if weight.iter().any(|&c| c < 0) {
            return Err(parameter(format!("weight {weight:?} is not dominant")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CasimirValue {
    /// `<lambda, lambda + 2 delta>` in the normalized form.
    pub prime: BigRational,
    /// Eigenvalue with respect to the negative Killing form.
    pub q: BigRational,
}

pub fn casimir(scale: &GroupScale, weight: &[i64]) -> Result<CasimirValue> {
    scale.check_weight(weight)?;
    let prime = scale.roots.casimir_prime(weight);
    let q = prime.clone() / scale.kappa.clone();
    Ok(CasimirValue { prime, q })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CasimirOrder {
    Greater,
    Equal,
    /// The first weight does not dominate the second on every simple coroot.
    NotComparable,
}

/// Compares the Casimir constants of two dominant weights, `weight1`
/// expected to dominate `weight2` coordinatewise.
pub fn casimir_compare(scale: &GroupScale, weight1: &[i64], weight2: &[i64]) -> Result<CasimirOrder> {
    scale.check_weight(weight1)?;
    scale.check_weight(weight2)?;
    if weight1.iter().zip(weight2).any(|(a, b)| a < b) {
        return Ok(CasimirOrder::NotComparable);
    }
    let c1 = scale.roots.casimir_prime(weight1);
    let c2 = scale.roots.casimir_prime(weight2);
    let diff = c1.clone() - c2.clone();
    match (weight1 == weight2, diff.is_zero(), diff > BigRational::zero()) {
        (true, true, _) => Ok(CasimirOrder::Equal),
        (false, false, true) => Ok(CasimirOrder::Greater),
        _ => Err(consistency(format!(
            "Casimir monotonicity fails for {weight1:?} ({c1}) over {weight2:?} ({c2})"
        ))),
    }
}
