use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    SLinearlyUnstable,
    NuUnstableConformal,
    Inconclusive,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::SLinearlyUnstable => "S-linearly-unstable",
            Classification::NuUnstableConformal => "nu-unstable-conformal",
            Classification::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Numerical evidence behind a [`StabilityVerdict`].
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// Invariant diagonal direction with `d^2/dt^2 S(g + t h)` at `t = 0`.
    SecondVariation {
        direction: Vec<f64>,
        value: f64,
        finite_difference: Option<f64>,
    },
    /// First nonzero Laplace eigenvalue against twice the Einstein constant.
    EigenvalueGap { eigenvalue: f64, einstein_constant: f64 },
    /// Eigenvalue of `nabla^* nabla - 2 R` on trace-free divergence-free
    /// tensors against the threshold below which the metric is unstable.
    OperatorEigenvalue { eigenvalue: f64, threshold: f64 },
}

impl Witness {
    /// Classification implied by the witness alone.
    pub fn classify(&self) -> Classification {
        match *self {
            Witness::SecondVariation { value, .. } if value > 0.0 => Classification::SLinearlyUnstable,
            Witness::EigenvalueGap {
                eigenvalue,
                einstein_constant,
            } if eigenvalue < 2.0 * einstein_constant => Classification::NuUnstableConformal,
            Witness::OperatorEigenvalue { eigenvalue, threshold } if eigenvalue < threshold => {
                Classification::SLinearlyUnstable
            }
            _ => Classification::Inconclusive,
        }
    }

    /// Signed margin of the defining inequality; positive means unstable.
    pub fn margin(&self) -> f64 {
        match *self {
            Witness::SecondVariation { value, .. } => value,
            Witness::EigenvalueGap {
                eigenvalue,
                einstein_constant,
            } => 2.0 * einstein_constant - eigenvalue,
            Witness::OperatorEigenvalue { eigenvalue, threshold } => threshold - eigenvalue,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityVerdict {
    pub classification: Classification,
    pub witness: Witness,
    pub coindex_lower_bound: usize,
}

impl StabilityVerdict {
    pub fn from_witness(witness: Witness, coindex_lower_bound: usize) -> Self {
        let classification = witness.classify();
        let coindex_lower_bound = if classification == Classification::Inconclusive {
            0
        } else {
            coindex_lower_bound.max(1)
        };
        Self {
            classification,
            witness,
            coindex_lower_bound,
        }
    }

    /// `true` when the stored classification agrees with the witness.
    pub fn is_consistent(&self) -> bool {
        self.witness.classify() == self.classification
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_follows_witness() {
        let v = StabilityVerdict::from_witness(
            Witness::SecondVariation {
                direction: vec![0.0, 1.0],
                value: 0.2,
                finite_difference: None,
            },
            1,
        );
        assert_eq!(v.classification, Classification::SLinearlyUnstable);
        let tie = StabilityVerdict::from_witness(
            Witness::EigenvalueGap {
                eigenvalue: 1.0,
                einstein_constant: 0.5,
            },
            3,
        );
        assert_eq!(tie.classification, Classification::Inconclusive);
        assert_eq!(tie.coindex_lower_bound, 0);
        assert!(tie.is_consistent());
    }
}
