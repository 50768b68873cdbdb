use std::ops::{Add, Neg, Sub};

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jordan::{complexify, Algebra, ElementJ};
use crate::linalg::CMat;

pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

/// Relative size of `|det|` below which an element is treated as singular.
pub const SINGULAR_EPS: f64 = 1e-12;

/// An element `x + iy` of the complexified algebra, `x, y` real.
///
/// Coordinates are complex-bilinear in the real canonical basis, so the
/// conjugation `x + iy -> x - iy` is coordinatewise complex conjugation.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementC {
    alg: Algebra,
    z: Vec<Complex64>,
}

impl ElementC {
    pub fn new(alg: Algebra, re: Vec<f64>, im: Vec<f64>) -> Result<Self> {
        alg.check_len(re.len(), "coords_re")?;
        alg.check_len(im.len(), "coords_im")?;
        if re.iter().chain(&im).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("coords: non-finite value".into()));
        }
        let z = re
            .into_iter()
            .zip(im)
            .map(|(a, b)| Complex64::new(a, b))
            .collect();
        Ok(ElementC { alg, z })
    }

    pub fn from_coords(alg: Algebra, z: Vec<Complex64>) -> Result<Self> {
        alg.check_len(z.len(), "coords")?;
        Ok(ElementC { alg, z })
    }

    pub(crate) fn from_raw(alg: Algebra, z: Vec<Complex64>) -> Self {
        debug_assert_eq!(z.len(), alg.dim());
        ElementC { alg, z }
    }

    pub fn from_real(x: &ElementJ) -> Self {
        ElementC::from_raw(x.algebra(), complexify(x.coords()))
    }

    /// `x + iy` from two real elements.
    pub fn from_parts(x: &ElementJ, y: &ElementJ) -> Result<Self> {
        x.algebra().check_same(&y.algebra())?;
        let z = x
            .coords()
            .iter()
            .zip(y.coords())
            .map(|(&a, &b)| Complex64::new(a, b))
            .collect();
        Ok(ElementC::from_raw(x.algebra(), z))
    }

    pub fn zero(alg: Algebra) -> Self {
        ElementC::from_raw(alg, vec![Complex64::new(0.0, 0.0); alg.dim()])
    }

    pub fn unit(alg: Algebra) -> Self {
        ElementC::from_raw(alg, complexify(&alg.unit_coords()))
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.z
    }

    pub fn coords_re(&self) -> Vec<f64> {
        self.z.iter().map(|v| v.re).collect()
    }

    pub fn coords_im(&self) -> Vec<f64> {
        self.z.iter().map(|v| v.im).collect()
    }

    pub fn re(&self) -> ElementJ {
        ElementJ::new(self.alg, self.coords_re()).expect("finite coordinates")
    }

    pub fn im(&self) -> ElementJ {
        ElementJ::new(self.alg, self.coords_im()).expect("finite coordinates")
    }

    /// The conjugation `x + iy -> x - iy`.
    pub fn conj(&self) -> Self {
        ElementC::from_raw(self.alg, self.z.iter().map(|v| v.conj()).collect())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ElementC::from_raw(self.alg, self.z.iter().map(|v| v * s).collect())
    }

    /// Hermitian form `<z|w> = tr(z conj(w))`.
    pub fn hermitian_inner(&self, other: &ElementC) -> Result<Complex64> {
        self.alg.check_same(&other.alg)?;
        let s: Complex64 = self.z.iter().zip(&other.z).map(|(a, b)| a * b.conj()).sum();
        Ok(s * self.alg.trace_weight())
    }

    pub fn norm(&self) -> f64 {
        (self.alg.trace_weight() * self.z.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt()
    }

    pub fn distance(&self, other: &ElementC) -> f64 {
        (self - other).norm()
    }

    pub fn cjmul(&self, other: &ElementC) -> Result<ElementC> {
        self.alg.check_same(&other.alg)?;
        Ok(self.cjmul_unchecked(other))
    }

    pub(crate) fn cjmul_unchecked(&self, other: &ElementC) -> ElementC {
        ElementC::from_raw(self.alg, self.alg.product(&self.z, &other.z))
    }

    pub fn ctrace(&self) -> Complex64 {
        self.alg.trace(&self.z)
    }

    pub fn cdet(&self) -> Complex64 {
        self.alg.det(&self.z)
    }

    /// Whether `|det z|` is negligible relative to `(1 + |z|)^r`.
    pub fn is_singular(&self) -> bool {
        let scale = (1.0 + self.norm()).powi(self.alg.rank() as i32);
        self.cdet().norm() <= SINGULAR_EPS * scale
    }

    pub fn cinverse(&self) -> Result<ElementC> {
        if self.is_singular() {
            return Err(Error::Singular {
                det: self.cdet().norm(),
            });
        }
        self.alg
            .inverse(&self.z)
            .map(|z| ElementC::from_raw(self.alg, z))
            .ok_or(Error::Singular { det: 0.0 })
    }

    /// `P(z)w = 2 z(zw) - z^2 w`.
    pub fn cquad_rep_apply(&self, w: &ElementC) -> Result<ElementC> {
        self.alg.check_same(&w.alg)?;
        let zw = self.cjmul_unchecked(w);
        let a = self.cjmul_unchecked(&zw).scale(Complex64::new(2.0, 0.0));
        let b = self.cjmul_unchecked(self).cjmul_unchecked(w);
        Ok(&a - &b)
    }

    /// Matrix of `L(z)` on complex coordinates.
    pub fn lmul_operator(&self) -> CMat {
        self.alg.lmul_matrix(&self.z)
    }

    /// Matrix of `P(z)` on complex coordinates.
    pub fn quad_operator(&self) -> CMat {
        self.alg.quad_matrix(&self.z)
    }

    pub fn apply(op: &CMat, z: &ElementC) -> ElementC {
        let v = DVector::from_column_slice(&z.z);
        let out = op * v;
        ElementC::from_raw(z.alg, out.iter().copied().collect())
    }
}

impl Add for &ElementC {
    type Output = ElementC;
    fn add(self, rhs: &ElementC) -> ElementC {
        assert_eq!(self.alg, rhs.alg, "algebra mismatch");
        ElementC::from_raw(
            self.alg,
            self.z.iter().zip(&rhs.z).map(|(a, b)| a + b).collect(),
        )
    }
}

impl Sub for &ElementC {
    type Output = ElementC;
    fn sub(self, rhs: &ElementC) -> ElementC {
        assert_eq!(self.alg, rhs.alg, "algebra mismatch");
        ElementC::from_raw(
            self.alg,
            self.z.iter().zip(&rhs.z).map(|(a, b)| a - b).collect(),
        )
    }
}

impl Neg for &ElementC {
    type Output = ElementC;
    fn neg(self) -> ElementC {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}
