use serde::{Deserialize, Serialize};

/// How the index operations treat angles that sit close to, but not within,
/// the coincidence threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Refuse to decide inside the gray zone.
    #[default]
    Strict,
    /// Treat gray-zone angles as transverse; perturb tangential paths.
    Permissive,
}

/// Thresholds shared by every numeric decision in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Structural invariants (idempotency, frame orthogonality, round trips).
    pub spec: f64,
    /// Relative eigenvalue threshold for rank decisions.
    pub rank: f64,
    /// Distance to pi under which an eigenangle counts as a coincidence direction.
    pub transverse: f64,
    /// Maximum distance between a raw index and its rounded value.
    pub int: f64,
    /// Residual allowed for membership in the Shilov boundary and lift invariants.
    pub shilov: f64,
    pub mode: Mode,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            spec: 1e-9,
            rank: 1e-8,
            transverse: 1e-7,
            int: 1e-6,
            shilov: 1e-7,
            mode: Mode::Strict,
        }
    }
}

impl Tolerances {
    /// Width of the refusal band above `transverse`.
    pub fn gray_zone(&self) -> f64 {
        10.0 * self.transverse
    }
}
