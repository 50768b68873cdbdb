use std::f64::consts::PI;

use num_complex::Complex64;

use super::complex::{ElementC, I};
use crate::error::{Error, Result};
use crate::jordan::{spectral_decompose_real, Algebra, ElementJ};

/// Reduces an angle to `(-pi, pi]`.
pub fn principal_angle(a: f64) -> f64 {
    let mut t = a.rem_euclid(2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    }
    t
}

/// Angular distance from `e^{ia}` to `-1`.
pub fn distance_to_pi(a: f64) -> f64 {
    (PI - principal_angle(a).abs()).abs()
}

/// A point of the Shilov boundary `S = {sigma : conj(sigma) = sigma^{-1}}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShilovPoint {
    value: ElementC,
}

impl ShilovPoint {
    /// Validates membership in `S` up to `tol`.
    pub fn new(value: ElementC, tol: f64) -> Result<Self> {
        let residual = Self::residual(&value);
        if !(residual <= tol) {
            return Err(Error::NotOnShilov { residual });
        }
        Ok(ShilovPoint { value })
    }

    /// Distance of `value` from satisfying `conj(z) = z^{-1}` and `|det z| = 1`.
    pub fn residual(value: &ElementC) -> f64 {
        match value.cinverse() {
            Ok(inv) => {
                let d = (value.cdet().norm() - 1.0).abs();
                value.conj().distance(&inv).max(d)
            }
            Err(_) => f64::INFINITY,
        }
    }

    pub(crate) fn from_raw(value: ElementC) -> Self {
        ShilovPoint { value }
    }

    pub fn unit(alg: Algebra) -> Self {
        ShilovPoint::from_raw(ElementC::unit(alg))
    }

    /// `sum_j e^{i angles_j} c_j` on a real Jordan frame.
    pub fn from_frame(frame: &[ElementJ], angles: &[f64]) -> Self {
        UnitSpectrum {
            angles: angles.to_vec(),
            frame: frame.to_vec(),
        }
        .point()
    }

    /// `exp(i x)` for a real element `x`.
    pub fn exp_i(x: &ElementJ) -> Result<Self> {
        let sp = spectral_decompose_real(x)?;
        Ok(ShilovPoint::from_frame(&sp.frame, &sp.eigenvalues))
    }

    pub fn value(&self) -> &ElementC {
        &self.value
    }

    pub fn into_value(self) -> ElementC {
        self.value
    }

    pub fn algebra(&self) -> Algebra {
        self.value.algebra()
    }

    /// `e^{i phase} sigma`.
    pub fn rotate(&self, phase: f64) -> Self {
        ShilovPoint::from_raw(self.value.scale(Complex64::from_polar(1.0, phase)))
    }

    /// `sigma^{-1} = conj(sigma)`.
    pub fn inverse(&self) -> Self {
        ShilovPoint::from_raw(self.value.conj())
    }

    pub fn neg(&self) -> Self {
        ShilovPoint::from_raw(-&self.value)
    }

    pub fn det(&self) -> Complex64 {
        self.value.cdet()
    }

    pub fn spectral(&self, tol: f64) -> Result<UnitSpectrum> {
        shilov_spectral(self, tol)
    }

    /// Square root on the frame of `sigma` using half angles; `flip[j]` selects
    /// the other root `-e^{i theta_j / 2}` on frame member `j`.
    pub fn sqrt(&self, flip: Option<&[bool]>, tol: f64) -> Result<ShilovPoint> {
        let sp = self.spectral(tol)?;
        let angles: Vec<f64> = sp
            .angles
            .iter()
            .enumerate()
            .map(|(j, t)| {
                let f = flip.and_then(|f| f.get(j)).copied().unwrap_or(false);
                0.5 * t + if f { PI } else { 0.0 }
            })
            .collect();
        Ok(ShilovPoint::from_frame(&sp.frame, &angles))
    }

    /// Principal logarithm `i sum_j theta_j c_j`; undefined when some angle is
    /// within `transverse` of pi.
    pub fn log(&self, transverse: f64, tol: f64) -> Result<ElementC> {
        let sp = self.spectral(tol)?;
        if let Some(t) = sp.angles.iter().find(|t| distance_to_pi(**t) < transverse) {
            return Err(Error::domain(
                "log",
                format!("eigenangle {t:.3e} is on the cut at pi"),
            ));
        }
        let x = ElementJ::from_frame(&sp.frame, &sp.angles);
        Ok(ElementC::from_real(&x).scale(I))
    }
}

/// Spectral data `sigma = sum_j e^{i angles_j} c_j` of a point of `S` over a
/// real Jordan frame.
#[derive(Debug, Clone)]
pub struct UnitSpectrum {
    pub angles: Vec<f64>,
    pub frame: Vec<ElementJ>,
}

impl UnitSpectrum {
    pub fn point(&self) -> ShilovPoint {
        let alg = self.frame[0].algebra();
        let mut z = vec![Complex64::new(0.0, 0.0); alg.dim()];
        for (c, &t) in self.frame.iter().zip(&self.angles) {
            let phase = Complex64::from_polar(1.0, t);
            for (o, v) in z.iter_mut().zip(c.coords()) {
                *o += phase * v;
            }
        }
        ShilovPoint::from_raw(ElementC::from_raw(alg, z))
    }
}

/// Mixing angles tried, in order, for the joint diagonalization of `Re sigma`
/// and `Im sigma`.
const MIX_ANGLES: [f64; 8] = [0.377, 1.213, 2.051, 2.894, 0.791, 1.632, 2.473, 0.118];

/// Decomposes `sigma` over a common real frame of `Re sigma` and `Im sigma`.
///
/// A combination `cos a Re sigma + sin a Im sigma` is diagonalized; the frame
/// is accepted once it reproduces `sigma` to within `tol`.
pub fn shilov_spectral(sigma: &ShilovPoint, tol: f64) -> Result<UnitSpectrum> {
    let re = sigma.value.re();
    let im = sigma.value.im();
    let mut best = f64::INFINITY;
    for a in MIX_ANGLES {
        let mix = &re.scale(a.cos()) + &im.scale(a.sin());
        let sp = spectral_decompose_real(&mix)?;
        let angles: Vec<f64> = sp
            .frame
            .iter()
            .map(|c| {
                let x = re.inner(c).expect("same algebra");
                let y = im.inner(c).expect("same algebra");
                principal_angle(y.atan2(x))
            })
            .collect();
        let cand = UnitSpectrum {
            angles,
            frame: sp.frame,
        };
        let residual = cand.point().value.distance(&sigma.value);
        if residual <= tol {
            return Ok(cand);
        }
        best = best.min(residual);
    }
    Err(Error::JointDiagonalization { residual: best })
}

/// `p(z) = (z - ie)(z + ie)^{-1} = e - 2i (z + ie)^{-1}`.
pub fn cayley_p(z: &ElementC) -> Result<ElementC> {
    let e = ElementC::unit(z.algebra());
    let w = z + &e.scale(I);
    let inv = w
        .cinverse()
        .map_err(|_| Error::domain("cayley_p", "z + ie is not invertible"))?;
    Ok(&e - &inv.scale(2.0 * I))
}

/// `c(w) = i (e + w)(e - w)^{-1} = i (2 (e - w)^{-1} - e)`.
pub fn cayley_c(w: &ElementC) -> Result<ElementC> {
    let e = ElementC::unit(w.algebra());
    let inv = (&e - w)
        .cinverse()
        .map_err(|_| Error::domain("cayley_c", "e - w is not invertible"))?;
    Ok((&inv.scale(Complex64::new(2.0, 0.0)) - &e).scale(I))
}
