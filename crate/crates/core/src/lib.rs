//! Index theory on the Shilov boundary of tube-type domains, realized through
//! simple Euclidean Jordan algebras.

pub mod dynamics;
pub mod error;
pub mod indices;
pub mod jordan;
pub mod linalg;
pub mod random;
pub mod selftest;
pub mod shilov;
pub mod tolerance;

pub use error::{Error, ErrorClass, Result};
pub use tolerance::{Mode, Tolerances};
