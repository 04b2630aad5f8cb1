use crate::error::{parameter, Result};

/// Invariant metric `x_1 Q|m_1 + ... + x_r Q|m_r`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalMetric {
    x: Vec<f64>,
}

impl DiagonalMetric {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        if x.is_empty() || x.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(parameter(format!("metric scales must be positive and finite, got {x:?}")));
        }
        Ok(Self { x })
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn scaled(&self, t: f64) -> Result<Self> {
        Self::new(self.x.iter().map(|v| v * t).collect())
    }

    /// The homothetic metric whose entry `index` equals `value`.
    pub fn gauge_to(&self, index: usize, value: f64) -> Result<Self> {
        self.scaled(value / self.x[index])
    }

    /// Scales divided by the first scale.
    pub fn ratios(&self) -> Vec<f64> {
        let head = self.x[0];
        self.x.iter().map(|v| v / head).collect()
    }
}

impl TryFrom<Vec<f64>> for DiagonalMetric {
    type Error = crate::error::Error;
    fn try_from(x: Vec<f64>) -> Result<Self> {
        Self::new(x)
    }
}
