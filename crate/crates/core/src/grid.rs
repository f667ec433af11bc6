//! Sampling grids shared by the verification harness and the CLI.

use serde::{Deserialize, Serialize};

use crate::error::GridError;

/// Uniform `x` points on `[x_min, x_max]` crossed with a list of times.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    x_min: f64,
    x_max: f64,
    x_count: usize,
    t_values: Vec<f64>,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, x_count: usize, t_values: Vec<f64>) -> Result<Self, GridError> {
        if !(x_min.is_finite() && x_max.is_finite() && t_values.iter().all(|t| t.is_finite())) {
            return Err(GridError::NonFinite);
        }
        if !(x_min < x_max) {
            return Err(GridError::EmptyRange { x_min, x_max });
        }
        if x_count < 2 {
            return Err(GridError::TooFewPoints(x_count));
        }
        if t_values.is_empty() {
            return Err(GridError::NoTimes);
        }
        Ok(GridSpec {
            x_min,
            x_max,
            x_count,
            t_values,
        })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn x_count(&self) -> usize {
        self.x_count
    }

    pub fn t_values(&self) -> &[f64] {
        &self.t_values
    }

    /// The `x` samples; the last one is exactly `x_max`.
    pub fn xs(&self) -> Vec<f64> {
        let last = self.x_count - 1;
        let step = (self.x_max - self.x_min) / last as f64;
        (0..self.x_count)
            .map(|i| {
                if i == last {
                    self.x_max
                } else {
                    self.x_min + step * i as f64
                }
            })
            .collect()
    }

    /// `(t, x)` pairs, `t` outer and `x` inner.
    pub fn points(&self) -> Vec<(f64, f64)> {
        let xs = self.xs();
        self.t_values
            .iter()
            .flat_map(|&t| xs.iter().map(move |&x| (t, x)))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.x_count * self.t_values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_are_exact() {
        let g = GridSpec::new(-5.0, 5.0, 7, vec![0.0, 0.1]).unwrap();
        let xs = g.xs();
        assert_eq!(xs[0], -5.0);
        assert_eq!(xs[6], 5.0);
        assert_eq!(g.points().len(), 14);
        assert_eq!(g.points()[7], (0.1, -5.0));
    }

    #[test]
    fn rejects_bad_grids() {
        assert_eq!(
            GridSpec::new(1.0, 1.0, 3, vec![0.0]),
            Err(GridError::EmptyRange { x_min: 1.0, x_max: 1.0 })
        );
        assert_eq!(GridSpec::new(0.0, 1.0, 1, vec![0.0]), Err(GridError::TooFewPoints(1)));
        assert_eq!(GridSpec::new(0.0, 1.0, 2, vec![]), Err(GridError::NoTimes));
        assert_eq!(GridSpec::new(0.0, f64::NAN, 2, vec![0.0]), Err(GridError::NonFinite));
    }
}
