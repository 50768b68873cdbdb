use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMat;

const SQRT_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// The three families of simple Euclidean Jordan algebras supported here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgebraKind {
    /// Real symmetric m x m matrices.
    #[serde(rename = "sym-r")]
    SymR,
    /// Complex Hermitian m x m matrices.
    #[serde(rename = "herm-c")]
    HermC,
    /// The spin factor R x R^(q-1).
    #[serde(rename = "spin")]
    Spin,
}

impl AlgebraKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AlgebraKind::SymR => "sym-r",
            AlgebraKind::HermC => "herm-c",
            AlgebraKind::Spin => "spin",
        }
    }
}

impl FromStr for AlgebraKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sym-r" => Ok(AlgebraKind::SymR),
            "herm-c" => Ok(AlgebraKind::HermC),
            "spin" => Ok(AlgebraKind::Spin),
            other => Err(Error::InvalidInput(format!(
                "unknown algebra kind '{other}'"
            ))),
        }
    }
}

/// A simple Euclidean Jordan algebra together with its structure numbers:
/// dimension `n`, rank `r` and Peirce invariant `d`, tied by
/// `n = r + r(r-1)d/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Algebra {
    kind: AlgebraKind,
    param: usize,
    n: usize,
    r: usize,
    d: usize,
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind.as_str(), self.param)
    }
}

impl Algebra {
    pub fn new(kind: AlgebraKind, param: usize) -> Result<Self> {
        let (n, r, d) = match kind {
            AlgebraKind::SymR if param >= 1 => (param * (param + 1) / 2, param, 1),
            AlgebraKind::HermC if param >= 1 => (param * param, param, 2),
            AlgebraKind::Spin if param >= 3 => (param, 2, param - 2),
            AlgebraKind::Spin => {
                return Err(Error::InvalidInput(format!(
                    "spin factor needs q >= 3, got {param}"
                )))
            }
            _ => return Err(Error::InvalidInput("matrix size must be positive".into())),
        };
        Ok(Algebra {
            kind,
            param,
            n,
            r,
            d,
        })
    }

    pub fn sym_r(m: usize) -> Self {
        Self::new(AlgebraKind::SymR, m).expect("matrix size must be positive")
    }

    pub fn herm_c(m: usize) -> Self {
        Self::new(AlgebraKind::HermC, m).expect("matrix size must be positive")
    }

    pub fn spin(q: usize) -> Self {
        Self::new(AlgebraKind::Spin, q).expect("spin factor needs q >= 3")
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn param(&self) -> usize {
        self.param
    }

    /// Real dimension `n`.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Rank `r`: the size of a Jordan frame.
    pub fn rank(&self) -> usize {
        self.r
    }

    /// Peirce invariant `d`.
    pub fn peirce_d(&self) -> usize {
        self.d
    }

    /// Dimension of `J(c,1)` for an idempotent `c` of rank `k`.
    pub fn peirce_one_dim(&self, k: usize) -> usize {
        k + k * k.saturating_sub(1) * self.d / 2
    }

    pub(crate) fn check_same(&self, other: &Algebra) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }

    pub(crate) fn check_len(&self, len: usize, field: &str) -> Result<()> {
        if len == self.n {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "{field}: expected {} coordinates for {self}, got {len}",
                self.n
            )))
        }
    }

    /// Weight relating the trace form to the coordinate dot product:
    /// `tr(x y) = weight * <coords(x), coords(y)>`. The matrix bases are
    /// orthonormal; spin coordinates are the raw `(x0, x_vec)`.
    pub(crate) fn trace_weight(&self) -> f64 {
        match self.kind {
            AlgebraKind::Spin => 2.0,
            _ => 1.0,
        }
    }

    /// Coordinates of the unit element.
    pub fn unit_coords(&self) -> Vec<f64> {
        let mut e = vec![0.0; self.n];
        match self.kind {
            AlgebraKind::Spin => e[0] = 1.0,
            _ => e[..self.param].iter_mut().for_each(|x| *x = 1.0),
        }
        e
    }

    /// Off-diagonal index pairs `(i, j)`, `i < j`, in row-major order.
    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.param;
        (0..m).flat_map(move |i| ((i + 1)..m).map(move |j| (i, j)))
    }

    /// Complex matrix `sum z_k B_k` for the matrix kinds (`None` for spin).
    ///
    /// Coordinate order: diagonal entries, then `(E_ij + E_ji)/sqrt2` for `i < j`
    /// row-major, then (Hermitian case) `(iE_ij - iE_ji)/sqrt2` in the same order.
    pub(crate) fn to_cmatrix(&self, z: &[Complex64]) -> Option<CMat> {
        let m = self.param;
        let npairs = m * (m - 1) / 2;
        match self.kind {
            AlgebraKind::Spin => None,
            AlgebraKind::SymR | AlgebraKind::HermC => {
                let mut a = DMatrix::from_element(m, m, Complex64::new(0.0, 0.0));
                for i in 0..m {
                    a[(i, i)] = z[i];
                }
                let imag = Complex64::new(0.0, 1.0);
                for (k, (i, j)) in self.pairs().enumerate() {
                    let s = z[m + k] * SQRT_HALF;
                    let t = if self.kind == AlgebraKind::HermC {
                        z[m + npairs + k] * SQRT_HALF * imag
                    } else {
                        Complex64::new(0.0, 0.0)
                    };
                    a[(i, j)] = s + t;
                    a[(j, i)] = s - t;
                }
                Some(a)
            }
        }
    }

    /// Inverse of [`Algebra::to_cmatrix`]: `z_k = tr(B_k A)`.
    pub(crate) fn from_cmatrix(&self, a: &CMat) -> Vec<Complex64> {
        let m = self.param;
        let npairs = m * (m - 1) / 2;
        let mut z = vec![Complex64::new(0.0, 0.0); self.n];
        for i in 0..m {
            z[i] = a[(i, i)];
        }
        let imag = Complex64::new(0.0, 1.0);
        for (k, (i, j)) in self.pairs().enumerate() {
            z[m + k] = (a[(i, j)] + a[(j, i)]) * SQRT_HALF;
            if self.kind == AlgebraKind::HermC {
                z[m + npairs + k] = (a[(j, i)] - a[(i, j)]) * imag * SQRT_HALF;
            }
        }
        z
    }

    /// Complex-bilinear Jordan product on coordinates.
    pub(crate) fn product(&self, x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
        match self.kind {
            AlgebraKind::Spin => {
                let mut out = vec![Complex64::new(0.0, 0.0); self.n];
                let mut dot = x[0] * y[0];
                for k in 1..self.n {
                    dot += x[k] * y[k];
                    out[k] = x[0] * y[k] + y[0] * x[k];
                }
                out[0] = dot;
                out
            }
            _ => {
                let a = self.to_cmatrix(x).expect("matrix kind");
                let b = self.to_cmatrix(y).expect("matrix kind");
                let p = (&a * &b + &b * &a).map(|v| v * 0.5);
                self.from_cmatrix(&p)
            }
        }
    }

    pub(crate) fn trace(&self, x: &[Complex64]) -> Complex64 {
        match self.kind {
            AlgebraKind::Spin => x[0] * 2.0,
            _ => x[..self.param].iter().sum(),
        }
    }

    /// Holomorphic extension of the Jordan determinant.
    pub(crate) fn det(&self, x: &[Complex64]) -> Complex64 {
        match self.kind {
            AlgebraKind::Spin => {
                let mut d = x[0] * x[0];
                for v in &x[1..] {
                    d -= v * v;
                }
                d
            }
            _ => self.to_cmatrix(x).expect("matrix kind").determinant(),
        }
    }

    /// Jordan inverse, `None` when the element is singular.
    pub(crate) fn inverse(&self, x: &[Complex64]) -> Option<Vec<Complex64>> {
        match self.kind {
            AlgebraKind::Spin => {
                let d = self.det(x);
                if d.norm() == 0.0 {
                    return None;
                }
                let mut out: Vec<Complex64> = x.iter().map(|v| -v / d).collect();
                out[0] = x[0] / d;
                Some(out)
            }
            _ => {
                let a = self.to_cmatrix(x).expect("matrix kind");
                a.try_inverse().map(|inv| self.from_cmatrix(&inv))
            }
        }
    }

    /// Matrix of the multiplication operator `L(x)` in coordinates.
    pub(crate) fn lmul_matrix(&self, x: &[Complex64]) -> CMat {
        let n = self.n;
        let mut l = CMat::zeros(n, n);
        let mut basis = vec![Complex64::new(0.0, 0.0); n];
        for k in 0..n {
            basis[k] = Complex64::new(1.0, 0.0);
            let col = self.product(x, &basis);
            for (i, v) in col.into_iter().enumerate() {
                l[(i, k)] = v;
            }
            basis[k] = Complex64::new(0.0, 0.0);
        }
        l
    }

    /// Matrix of the quadratic representation `P(x) = 2L(x)^2 - L(x^2)`.
    pub(crate) fn quad_matrix(&self, x: &[Complex64]) -> CMat {
        let l = self.lmul_matrix(x);
        let l2 = self.lmul_matrix(&self.product(x, x));
        (&l * &l).map(|v| v * 2.0) - l2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_numbers_follow_the_table() {
        for m in 1..5 {
            let a = Algebra::sym_r(m);
            assert_eq!((a.dim(), a.rank(), a.peirce_d()), (m * (m + 1) / 2, m, 1));
            let b = Algebra::herm_c(m);
            assert_eq!((b.dim(), b.rank(), b.peirce_d()), (m * m, m, 2));
        }
        for q in 3..8 {
            let s = Algebra::spin(q);
            assert_eq!((s.dim(), s.rank(), s.peirce_d()), (q, 2, q - 2));
        }
        for a in [Algebra::sym_r(3), Algebra::herm_c(2), Algebra::spin(5)] {
            assert_eq!(a.dim(), a.peirce_one_dim(a.rank()));
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Algebra::new(AlgebraKind::Spin, 2).is_err());
        assert!(Algebra::new(AlgebraKind::SymR, 0).is_err());
        assert!("octonion".parse::<AlgebraKind>().is_err());
    }

    #[test]
    fn matrix_coordinates_round_trip() {
        let alg = Algebra::herm_c(3);
        let z: Vec<Complex64> = (0..alg.dim())
            .map(|k| Complex64::new(k as f64 * 0.3 - 1.0, 0.7 - k as f64 * 0.1))
            .collect();
        let back = alg.from_cmatrix(&alg.to_cmatrix(&z).unwrap());
        for (a, b) in z.iter().zip(&back) {
            assert!((a - b).norm() < 1e-14);
        }
    }
}
