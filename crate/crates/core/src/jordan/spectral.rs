use super::algebra::{Algebra, AlgebraKind};
use super::element::ElementJ;
use crate::error::Result;
use crate::linalg::{jacobi_hermitian, CMat};

/// Spectral decomposition `x = sum_j lambda_j c_j` over a Jordan frame of
/// primitive idempotents. Eigenvalues are sorted in descending order and
/// repeated according to multiplicity.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub frame: Vec<ElementJ>,
}

impl Spectrum {
    pub fn max_abs(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |m, l| m.max(l.abs()))
    }

    /// Count of eigenvalues above `tol` relative to the largest magnitude.
    pub fn rank(&self, tol: f64) -> usize {
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0;
        }
        self.eigenvalues
            .iter()
            .filter(|l| l.abs() > tol * scale)
            .count()
    }

    pub fn reconstruct(&self) -> ElementJ {
        ElementJ::from_frame(&self.frame, &self.eigenvalues)
    }

    /// Applies `f` to every eigenvalue on the same frame.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> ElementJ {
        let vals: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        ElementJ::from_frame(&self.frame, &vals)
    }
}

/// The frame `(E_11, ..., E_mm)` for matrix algebras, `1/2 (1, +-e_1)` for spin.
pub fn standard_frame(alg: Algebra) -> Vec<ElementJ> {
    match alg.kind() {
        AlgebraKind::Spin => {
            let mut plus = vec![0.0; alg.dim()];
            plus[0] = 0.5;
            plus[1] = 0.5;
            let mut minus = plus.clone();
            minus[1] = -0.5;
            vec![
                ElementJ::from_raw(alg, plus),
                ElementJ::from_raw(alg, minus),
            ]
        }
        _ => (0..alg.rank()).map(|i| ElementJ::basis(alg, i)).collect(),
    }
}

/// Rank-one idempotent `v v*` for a unit column vector.
pub(crate) fn projector(alg: Algebra, v: &CMat) -> ElementJ {
    let p = v * v.adjoint();
    let z = alg.from_cmatrix(&p);
    ElementJ::from_raw(alg, z.into_iter().map(|c| c.re).collect())
}

/// Frame idempotents spanned by the columns of a unitary matrix.
pub(crate) fn frame_from_unitary(alg: Algebra, q: &CMat) -> Vec<ElementJ> {
    (0..q.ncols())
        .map(|j| projector(alg, &q.columns(j, 1).into_owned()))
        .collect()
}

/// Spin-factor frame `1/2 (1, +-u)` for a unit vector `u` in `R^(q-1)`.
pub(crate) fn spin_frame(alg: Algebra, u: &[f64]) -> Vec<ElementJ> {
    let mut plus = vec![0.5; 1];
    plus.extend(u.iter().map(|v| 0.5 * v));
    let mut minus = vec![0.5; 1];
    minus.extend(u.iter().map(|v| -0.5 * v));
    vec![
        ElementJ::from_raw(alg, plus),
        ElementJ::from_raw(alg, minus),
    ]
}

pub fn spectral_decompose_real(x: &ElementJ) -> Result<Spectrum> {
    let alg = x.algebra();
    match alg.kind() {
        AlgebraKind::Spin => {
            let c = x.coords();
            let s = c[1..].iter().map(|v| v * v).sum::<f64>().sqrt();
            let mut u = vec![0.0; alg.dim() - 1];
            if s > 0.0 {
                u.iter_mut().zip(&c[1..]).for_each(|(a, b)| *a = b / s);
            } else {
                u[0] = 1.0;
            }
            Ok(Spectrum {
                eigenvalues: vec![c[0] + s, c[0] - s],
                frame: spin_frame(alg, &u),
            })
        }
        _ => {
            let a = alg.to_cmatrix(&x.complex_coords()).expect("matrix kind");
            let (values, vectors) = jacobi_hermitian(&a)?;
            Ok(Spectrum {
                eigenvalues: values,
                frame: frame_from_unitary(alg, &vectors),
            })
        }
    }
}
