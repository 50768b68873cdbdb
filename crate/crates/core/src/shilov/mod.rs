//! The complexified algebra, the Shilov boundary `S`, its universal cover and
//! the conformal group acting on both.

mod boundary;
mod complex;
mod lift;
mod word;

pub use boundary::{
    cayley_c, cayley_p, distance_to_pi, principal_angle, shilov_spectral, ShilovPoint, UnitSpectrum,
};
pub use complex::{ElementC, SINGULAR_EPS};
pub use lift::LiftedPoint;
pub use word::{
    Generator, GroupWord, LinearFactor, WordMode, LIFT_DRIFT, UNWRAP_MAX_LEVEL, UNWRAP_STEPS,
};
