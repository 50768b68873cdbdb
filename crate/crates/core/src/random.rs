//! Seeded generators for elements, frames, boundary points and group words.
//!
//! Real elements have independent standard Gaussian coordinates. Frames come
//! from a Gaussian matrix orthonormalized by QR (matrix kinds) or a uniform unit
//! vector (spin factors).

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::jordan::{frame_from_unitary, spin_frame, Algebra, AlgebraKind, ElementJ};
use crate::linalg::CMat;
use crate::shilov::{Generator, GroupWord, LiftedPoint, LinearFactor, ShilovPoint, WordMode};

pub type Rand = ChaCha8Rng;

pub fn rng(seed: u64) -> Rand {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut Rand) -> f64 {
    rng.sample(StandardNormal)
}

pub fn random_element(alg: Algebra, rng: &mut Rand) -> ElementJ {
    let coords = (0..alg.dim()).map(|_| gaussian(rng)).collect();
    ElementJ::new(alg, coords).expect("finite coordinates")
}

fn random_unitary_matrix(kind: AlgebraKind, m: usize, rng: &mut Rand) -> CMat {
    let g = DMatrix::from_fn(m, m, |_, _| {
        let im = if kind == AlgebraKind::HermC {
            gaussian(rng)
        } else {
            0.0
        };
        Complex64::new(gaussian(rng), im)
    });
    g.qr().q()
}

pub fn random_frame(alg: Algebra, rng: &mut Rand) -> Vec<ElementJ> {
    match alg.kind() {
        AlgebraKind::Spin => {
            let mut u: Vec<f64> = (1..alg.dim()).map(|_| gaussian(rng)).collect();
            let norm = u.iter().map(|v| v * v).sum::<f64>().sqrt();
            u.iter_mut().for_each(|v| *v /= norm);
            spin_frame(alg, &u)
        }
        kind => frame_from_unitary(alg, &random_unitary_matrix(kind, alg.param(), rng)),
    }
}

/// Angles drawn uniformly from `(-pi, pi)`.
pub fn random_angles(r: usize, rng: &mut Rand) -> Vec<f64> {
    (0..r).map(|_| rng.random_range(-PI..PI)).collect()
}

pub fn random_point(alg: Algebra, rng: &mut Rand) -> ShilovPoint {
    let frame = random_frame(alg, rng);
    ShilovPoint::from_frame(&frame, &random_angles(alg.rank(), rng))
}

/// A random point with a random sheet index `k` in `-2..=2`.
pub fn random_lift(alg: Algebra, rng: &mut Rand) -> LiftedPoint {
    let p = random_point(alg, rng);
    LiftedPoint::lift(p, rng.random_range(-2..=2))
}

/// A pair `(sigma, tau)` sharing exactly `ell` frame directions with equal
/// angles; the remaining part of `tau` is a random point of the Peirce
/// 0-space of the shared idempotent.
pub fn pair_with_coincidences(
    alg: Algebra,
    ell: usize,
    rng: &mut Rand,
) -> (ShilovPoint, ShilovPoint) {
    let r = alg.rank();
    assert!(ell <= r);
    let angles = random_angles(r, rng);
    let mut other = angles.clone();
    for a in other.iter_mut().skip(ell) {
        *a = rng.random_range(-PI..PI);
    }
    match alg.kind() {
        AlgebraKind::Spin => {
            let frame = random_frame(alg, rng);
            let tau_frame = if ell == 0 {
                random_frame(alg, rng)
            } else {
                frame.clone()
            };
            (
                ShilovPoint::from_frame(&frame, &angles),
                ShilovPoint::from_frame(&tau_frame, &other),
            )
        }
        kind => {
            let q = random_unitary_matrix(kind, r, rng);
            let v = random_unitary_matrix(kind, r - ell, rng);
            let mut block = CMat::identity(r, r);
            block.view_mut((ell, ell), (r - ell, r - ell)).copy_from(&v);
            let q2 = &q * block;
            (
                ShilovPoint::from_frame(&frame_from_unitary(alg, &q), &angles),
                ShilovPoint::from_frame(&frame_from_unitary(alg, &q2), &other),
            )
        }
    }
}

fn scaled(alg: Algebra, s: f64, rng: &mut Rand) -> ElementJ {
    random_element(alg, rng).scale(s)
}

fn unitary_generator(alg: Algebra, rng: &mut Rand) -> Generator {
    if rng.random_bool(0.5) {
        Generator::ExpIL(scaled(alg, 0.8, rng))
    } else {
        Generator::Derivation(scaled(alg, 0.7, rng), scaled(alg, 0.7, rng))
    }
}

fn linear_generator(alg: Algebra, dilation: f64, rng: &mut Rand) -> Generator {
    Generator::Linear(vec![
        LinearFactor::ExpL(scaled(alg, dilation, rng)),
        LinearFactor::ExpDerivation(scaled(alg, 0.5, rng), scaled(alg, 0.5, rng)),
    ])
}

fn tube_generator(alg: Algebra, rng: &mut Rand) -> Generator {
    match rng.random_range(0..3) {
        0 => Generator::Translate(scaled(alg, 1.0, rng)),
        1 => Generator::Inversion,
        _ => linear_generator(alg, 0.3, rng),
    }
}

/// A product of `len` unitary generators.
pub fn random_unitary_word(alg: Algebra, len: usize, rng: &mut Rand) -> GroupWord {
    let gens = (0..len).map(|_| unitary_generator(alg, rng)).collect();
    GroupWord::new(alg, WordMode::Unitary, gens, None).expect("valid word")
}

/// A product of `len` generators mixing tube and unitary ones.
pub fn random_mixed_word(alg: Algebra, len: usize, rng: &mut Rand) -> GroupWord {
    let gens = (0..len)
        .map(|_| {
            if rng.random_bool(0.6) {
                tube_generator(alg, rng)
            } else {
                unitary_generator(alg, rng)
            }
        })
        .collect();
    GroupWord::new(alg, WordMode::Tube, gens, None).expect("valid word")
}

/// An affine tube word (translations and structure-group operators); these
/// fix the boundary point `e`. Dilations are kept mild so that orbits reach
/// `e` slowly under iteration.
pub fn random_affine_word(alg: Algebra, len: usize, rng: &mut Rand) -> GroupWord {
    let gens = (0..len)
        .map(|_| {
            if rng.random_bool(0.6) {
                Generator::Translate(scaled(alg, 1.0, rng))
            } else {
                linear_generator(alg, 0.03, rng)
            }
        })
        .collect();
    GroupWord::new(alg, WordMode::Tube, gens, None).expect("valid word")
}
