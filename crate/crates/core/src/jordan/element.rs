use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::algebra::Algebra;
use super::spectral::{spectral_decompose_real, Spectrum};
use crate::error::{Error, Result};
use crate::linalg::RMat;

/// A real element of a Jordan algebra in the canonical coordinate basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementJ {
    alg: Algebra,
    coords: Vec<f64>,
}

pub(crate) fn complexify(x: &[f64]) -> Vec<Complex64> {
    x.iter().map(|&v| Complex64::new(v, 0.0)).collect()
}

fn real_part(z: Vec<Complex64>) -> Vec<f64> {
    z.into_iter().map(|v| v.re).collect()
}

impl ElementJ {
    pub fn new(alg: Algebra, coords: Vec<f64>) -> Result<Self> {
        alg.check_len(coords.len(), "coords")?;
        if coords.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("coords: non-finite value".into()));
        }
        Ok(ElementJ { alg, coords })
    }

    pub(crate) fn from_raw(alg: Algebra, coords: Vec<f64>) -> Self {
        debug_assert_eq!(coords.len(), alg.dim());
        ElementJ { alg, coords }
    }

    pub fn zero(alg: Algebra) -> Self {
        ElementJ::from_raw(alg, vec![0.0; alg.dim()])
    }

    pub fn unit(alg: Algebra) -> Self {
        ElementJ::from_raw(alg, alg.unit_coords())
    }

    /// Basis vector `k` of the canonical coordinate system.
    pub fn basis(alg: Algebra, k: usize) -> Self {
        let mut c = vec![0.0; alg.dim()];
        c[k] = 1.0;
        ElementJ::from_raw(alg, c)
    }

    /// Real symmetric (sym-r) or Hermitian (herm-c) matrix unit `E_ii`.
    pub fn diagonal_unit(alg: Algebra, i: usize) -> Self {
        assert!(alg.kind() != super::AlgebraKind::Spin && i < alg.param());
        ElementJ::basis(alg, i)
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn scale(&self, s: f64) -> Self {
        ElementJ::from_raw(self.alg, self.coords.iter().map(|v| v * s).collect())
    }

    /// Euclidean norm induced by the trace form.
    pub fn norm(&self) -> f64 {
        self.inner_unchecked(self).max(0.0).sqrt()
    }

    fn inner_unchecked(&self, other: &ElementJ) -> f64 {
        let dot: f64 = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum();
        self.alg.trace_weight() * dot
    }

    pub(crate) fn complex_coords(&self) -> Vec<Complex64> {
        complexify(&self.coords)
    }

    pub fn jmul(&self, other: &ElementJ) -> Result<ElementJ> {
        self.alg.check_same(&other.alg)?;
        Ok(self.jmul_unchecked(other))
    }

    pub(crate) fn jmul_unchecked(&self, other: &ElementJ) -> ElementJ {
        let p = self
            .alg
            .product(&self.complex_coords(), &other.complex_coords());
        ElementJ::from_raw(self.alg, real_part(p))
    }

    pub fn square(&self) -> ElementJ {
        self.jmul_unchecked(self)
    }

    /// Trace form `<x|y> = tr(x y)`.
    pub fn inner(&self, other: &ElementJ) -> Result<f64> {
        self.alg.check_same(&other.alg)?;
        Ok(self.inner_unchecked(other))
    }

    pub fn trace(&self) -> f64 {
        self.alg.trace(&self.complex_coords()).re
    }

    /// Jordan determinant, computed from the matrix realization (or the spin
    /// quadratic form), independently of the eigensolver.
    pub fn det_real(&self) -> f64 {
        self.alg.det(&self.complex_coords()).re
    }

    /// Matrix of `L(x)` acting on coordinates.
    pub fn lmul_operator(&self) -> RMat {
        self.alg.lmul_matrix(&self.complex_coords()).map(|z| z.re)
    }

    /// Matrix of the quadratic representation `P(x)`.
    pub fn quad_operator(&self) -> RMat {
        self.alg.quad_matrix(&self.complex_coords()).map(|z| z.re)
    }

    /// `P(x)y = 2 x(xy) - x^2 y`.
    pub fn quad_rep_apply(&self, y: &ElementJ) -> Result<ElementJ> {
        self.alg.check_same(&y.alg)?;
        let xy = self.jmul_unchecked(y);
        let a = self.jmul_unchecked(&xy).scale(2.0);
        let b = self.square().jmul_unchecked(y);
        Ok(&a - &b)
    }

    pub fn spectral(&self) -> Result<Spectrum> {
        spectral_decompose_real(self)
    }

    /// Jordan inverse; errors when some eigenvalue is within `tol` of zero
    /// (relative to the largest one).
    pub fn inverse_real(&self, tol: f64) -> Result<ElementJ> {
        let sp = self.spectral()?;
        let scale = sp.max_abs().max(f64::MIN_POSITIVE);
        if sp.eigenvalues.iter().any(|l| l.abs() <= tol * scale) || scale == f64::MIN_POSITIVE {
            return Err(Error::Singular {
                det: self.det_real(),
            });
        }
        match self.alg.inverse(&self.complex_coords()) {
            Some(inv) => Ok(ElementJ::from_raw(self.alg, real_part(inv))),
            None => Err(Error::Singular { det: 0.0 }),
        }
    }

    /// Number of eigenvalues with `|lambda| > tol * max |lambda|`.
    pub fn rank_real(&self, tol: f64) -> Result<usize> {
        Ok(self.spectral()?.rank(tol))
    }

    /// Membership in the open symmetric cone: every eigenvalue above `tol`.
    pub fn in_cone(&self, tol: f64) -> Result<bool> {
        Ok(self.spectral()?.eigenvalues.iter().all(|&l| l > tol))
    }

    /// `e_{p,q} = c_1 + ... + c_p - c_{p+1} - ... - c_{p+q}` for the standard frame.
    pub fn epq(alg: Algebra, p: usize, q: usize) -> Result<ElementJ> {
        let frame = super::spectral::standard_frame(alg);
        Self::epq_in_frame(&frame, p, q)
    }

    /// `e_{p,q}` built on a given Jordan frame.
    pub fn epq_in_frame(frame: &[ElementJ], p: usize, q: usize) -> Result<ElementJ> {
        let r = frame.len();
        if p + q > r {
            return Err(Error::InvalidInput(format!(
                "epq: p + q = {} exceeds rank {r}",
                p + q
            )));
        }
        let alg = frame[0].alg;
        let mut out = ElementJ::zero(alg);
        for (j, c) in frame.iter().enumerate() {
            if j < p {
                out = &out + c;
            } else if j < p + q {
                out = &out - c;
            }
        }
        Ok(out)
    }

    /// `sum_j a_j c_j` on a frame.
    pub fn from_frame(frame: &[ElementJ], values: &[f64]) -> ElementJ {
        assert_eq!(frame.len(), values.len());
        let alg = frame[0].alg;
        let mut out = vec![0.0; alg.dim()];
        for (c, &a) in frame.iter().zip(values) {
            for (o, v) in out.iter_mut().zip(&c.coords) {
                *o += a * v;
            }
        }
        ElementJ::from_raw(alg, out)
    }

    pub fn distance(&self, other: &ElementJ) -> f64 {
        (self - other).norm()
    }
}

impl Add for &ElementJ {
    type Output = ElementJ;
    fn add(self, rhs: &ElementJ) -> ElementJ {
        assert_eq!(self.alg, rhs.alg, "algebra mismatch");
        ElementJ::from_raw(
            self.alg,
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &ElementJ {
    type Output = ElementJ;
    fn sub(self, rhs: &ElementJ) -> ElementJ {
        assert_eq!(self.alg, rhs.alg, "algebra mismatch");
        ElementJ::from_raw(
            self.alg,
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &ElementJ {
    type Output = ElementJ;
    fn neg(self) -> ElementJ {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &ElementJ {
    type Output = ElementJ;
    fn mul(self, rhs: f64) -> ElementJ {
        self.scale(rhs)
    }
}
