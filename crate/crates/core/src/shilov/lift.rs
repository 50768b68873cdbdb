use std::f64::consts::PI;

use num_complex::Complex64;

use super::boundary::ShilovPoint;
use crate::error::{Error, Result};

/// A point `(sigma, theta)` of the universal cover, `det sigma = e^{i r theta}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedPoint {
    point: ShilovPoint,
    theta: f64,
}

impl LiftedPoint {
    pub fn new(point: ShilovPoint, theta: f64, tol: f64) -> Result<Self> {
        let r = point.algebra().rank() as f64;
        let residual = (point.det() - Complex64::from_polar(1.0, r * theta)).norm();
        if !(residual <= tol) {
            return Err(Error::BadLift { residual });
        }
        Ok(LiftedPoint { point, theta })
    }

    /// The lift with `theta = (Arg det sigma + 2 pi k) / r`.
    pub fn lift(point: ShilovPoint, k: i64) -> Self {
        let r = point.algebra().rank() as f64;
        let theta = (point.det().arg() + 2.0 * PI * k as f64) / r;
        LiftedPoint { point, theta }
    }

    pub fn point(&self) -> &ShilovPoint {
        &self.point
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Deck transformation `T^n`: `theta -> theta + 2 pi n / r`.
    pub fn t_shift(&self, n: i64) -> Self {
        let r = self.point.algebra().rank() as f64;
        LiftedPoint {
            point: self.point.clone(),
            theta: self.theta + 2.0 * PI * n as f64 / r,
        }
    }
}
