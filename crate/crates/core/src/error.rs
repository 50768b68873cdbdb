use thiserror::Error;

/// Coarse classification used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Inputs outside the domain of an operation (malformed, singular, off the boundary).
    Domain,
    /// A numerical decision could not be made safely (integrality, ambiguity, tangency).
    Ambiguity,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("algebra mismatch: {left} vs {right}")]
    AlgebraMismatch { left: String, right: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("singular element (|det| = {det:.3e})")]
    Singular { det: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal {off:.3e})")]
    NotConverged { sweeps: usize, off: f64 },

    #[error("element is not idempotent (residual {residual:.3e})")]
    NotIdempotent { residual: f64 },

    #[error("element is not in the Peirce 1/2-space (residual {residual:.3e})")]
    NotInHalfSpace { residual: f64 },

    #[error("point is not on the Shilov boundary (residual {residual:.3e})")]
    NotOnShilov { residual: f64 },

    #[error("lift invariant violated: |det - exp(i r theta)| = {residual:.3e}")]
    BadLift { residual: f64 },

    #[error("joint diagonalization failed (best residual {residual:.3e})")]
    JointDiagonalization { residual: f64 },

    #[error("domain violation at {position}: {reason}")]
    Domain { position: String, reason: String },

    #[error("points are not transverse (angle at distance {distance:.3e} from pi)")]
    NotTransverse { distance: f64 },

    #[error("near-transversality gray zone: angle at distance {distance:.3e} from pi")]
    GrayZone { distance: f64 },

    #[error("integrality guard failed: raw value {raw} has residual {residual:.3e}")]
    Integrality { raw: f64, residual: f64 },

    #[error("corank {corank} of P(sigma - tau) is not of the form n - dim J(c,1)")]
    CorankInadmissible { corank: usize },

    #[error("spectral and witness forms of the Souriau index disagree ({spectral} vs {witness})")]
    WitnessMismatch { spectral: i64, witness: i64 },

    #[error("argument unwrapping ambiguous near t = {t:.6} (jump {jump:.3e})")]
    UnwrapAmbiguity { t: f64, jump: f64 },

    #[error("strand matching ambiguous near t = {t:.6} (displacement {displacement:.3e})")]
    MatchingAmbiguity { t: f64, displacement: f64 },

    #[error("path endpoint lies on the Maslov cycle (t = {t})")]
    EndpointOnCycle { t: f64 },

    #[error("tangential crossing of the Maslov cycle at t = {t:.6} on strand {strand}")]
    Tangency { t: f64, strand: usize },

    #[error("no admissible perturbation angle: {0}")]
    NoAdmissiblePerturbation(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Integrality { .. }
            | Error::WitnessMismatch { .. }
            | Error::UnwrapAmbiguity { .. }
            | Error::MatchingAmbiguity { .. }
            | Error::Tangency { .. }
            | Error::GrayZone { .. }
            | Error::CorankInadmissible { .. }
            | Error::NotConverged { .. }
            | Error::JointDiagonalization { .. } => ErrorClass::Ambiguity,
            _ => ErrorClass::Domain,
        }
    }

    pub(crate) fn domain(position: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Domain {
            position: position.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
