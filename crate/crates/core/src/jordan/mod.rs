//! Real simple Euclidean Jordan algebras: `Sym(m,R)`, `Herm(m,C)` and the spin
//! factors, with their spectral theory and Peirce decompositions.

mod algebra;
mod element;
mod peirce;
mod spectral;

pub use algebra::{Algebra, AlgebraKind};
pub use element::ElementJ;
pub use peirce::{box_operator, frobenius_apply, peirce_decompose, PeirceSplit};
pub use spectral::{spectral_decompose_real, standard_frame, Spectrum};

pub(crate) use element::complexify;
pub(crate) use spectral::{frame_from_unitary, spin_frame};
