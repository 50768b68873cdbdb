//! Pointwise indices on `S` and its universal cover: transversality index,
//! the angle functional, Souriau, Maslov, inertia, Arnold and
//! Arnold-Leray-Maslov indices.

mod coords;

use std::f64::consts::PI;

use serde::Serialize;

pub use coords::{iota_shared_frame, m_shared_frame, m_shared_frame_raw, ord, ORD_EPS};

use crate::error::{Error, Result};
use crate::linalg::singular_values;
use crate::shilov::{
    cayley_c, distance_to_pi, principal_angle, ElementC, LiftedPoint, ShilovPoint,
};
use crate::tolerance::{Mode, Tolerances};

/// An integer index with the unrounded value it was read from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexReport {
    pub value: i64,
    pub raw: f64,
    pub residual: f64,
    /// Auxiliary lifted points used to certify the value.
    #[serde(skip)]
    pub witnesses: Vec<LiftedPoint>,
}

impl IndexReport {
    fn exact(value: i64) -> Self {
        IndexReport {
            value,
            raw: value as f64,
            residual: 0.0,
            witnesses: Vec::new(),
        }
    }
}

fn integral(raw: f64, tol: &Tolerances) -> Result<IndexReport> {
    let value = raw.round();
    let residual = (raw - value).abs();
    if !(residual <= tol.int) {
        return Err(Error::Integrality { raw, residual });
    }
    Ok(IndexReport {
        value: value as i64,
        raw,
        residual,
        witnesses: Vec::new(),
    })
}

/// Halves an integer combination, failing on odd values.
fn halve(twice: i64, raw_twice: f64, residual: f64) -> Result<IndexReport> {
    if twice % 2 != 0 {
        return Err(Error::Integrality {
            raw: raw_twice / 2.0,
            residual: 0.5,
        });
    }
    Ok(IndexReport {
        value: twice / 2,
        raw: raw_twice / 2.0,
        residual: residual / 2.0,
        witnesses: Vec::new(),
    })
}

fn check_pair(a: &ShilovPoint, b: &ShilovPoint) -> Result<()> {
    a.algebra().check_same(&b.algebra())
}

/// `-P(tau^{-1/2}) sigma`, the image of `sigma` under a unitary map taking `tau`
/// to `-e`. `flip` selects the square-root branch per frame member of `tau`.
pub fn relative_element_with_branch(
    sigma: &ShilovPoint,
    tau: &ShilovPoint,
    flip: Option<&[bool]>,
    tol: &Tolerances,
) -> Result<ShilovPoint> {
    check_pair(sigma, tau)?;
    let root = tau.inverse().sqrt(flip, tol.shilov)?;
    let w = -&root.value().cquad_rep_apply(sigma.value())?;
    ShilovPoint::new(w, tol.shilov)
}

pub fn relative_element(
    sigma: &ShilovPoint,
    tau: &ShilovPoint,
    tol: &Tolerances,
) -> Result<ShilovPoint> {
    relative_element_with_branch(sigma, tau, None, tol)
}

/// Principal angles of the relative element of `(sigma, tau)`.
pub fn relative_angles(
    sigma: &ShilovPoint,
    tau: &ShilovPoint,
    tol: &Tolerances,
) -> Result<Vec<f64>> {
    Ok(relative_element(sigma, tau, tol)?
        .spectral(tol.shilov)?
        .angles)
}

/// Marks the angles that count as coincidence directions (within
/// `tol.transverse` of pi). Angles in the gray zone above that are refused in
/// strict mode and treated as transverse in permissive mode.
pub fn coincidences(angles: &[f64], tol: &Tolerances) -> Result<Vec<bool>> {
    angles
        .iter()
        .map(|&a| {
            let d = distance_to_pi(a);
            if d < tol.transverse {
                Ok(true)
            } else if d < tol.gray_zone() && tol.mode == Mode::Strict {
                Err(Error::GrayZone { distance: d })
            } else {
                Ok(false)
            }
        })
        .collect()
}

/// Transversality index: the number of coincidence directions.
pub fn mu(sigma: &ShilovPoint, tau: &ShilovPoint, tol: &Tolerances) -> Result<usize> {
    let flags = coincidences(&relative_angles(sigma, tau, tol)?, tol)?;
    Ok(flags.iter().filter(|f| **f).count())
}

pub fn transversal(sigma: &ShilovPoint, tau: &ShilovPoint, tol: &Tolerances) -> Result<bool> {
    Ok(mu(sigma, tau, tol)? == 0)
}

/// Transversality index read from the corank of `P(sigma - tau)` on the
/// complexification: an idempotent of rank `r - k` supporting `sigma - tau`
/// leaves a kernel of dimension `n - dim J(c, 1)`.
pub fn mu_via_corank(sigma: &ShilovPoint, tau: &ShilovPoint, tol: &Tolerances) -> Result<usize> {
    check_pair(sigma, tau)?;
    let alg = sigma.algebra();
    let diff = sigma.value() - tau.value();
    let sv = singular_values(&diff.quad_operator());
    let top = sv.first().copied().unwrap_or(0.0);
    let rank = if top == 0.0 {
        0
    } else {
        sv.iter().filter(|s| **s > tol.rank * top).count()
    };
    let corank = alg.dim() - rank;
    let r = alg.rank();
    (0..=r)
        .find(|&k| alg.dim() - alg.peirce_one_dim(r - k) == corank)
        .ok_or(Error::CorankInadmissible { corank })
}

/// `Psi(sigma, tau)`: the sum of the principal angles of the relative element,
/// for transverse pairs.
pub fn psi(sigma: &ShilovPoint, tau: &ShilovPoint, tol: &Tolerances) -> Result<f64> {
    let angles = relative_angles(sigma, tau, tol)?;
    let flags = coincidences(&angles, tol)?;
    if let Some((a, _)) = angles.iter().zip(&flags).find(|(_, f)| **f) {
        return Err(Error::NotTransverse {
            distance: distance_to_pi(*a),
        });
    }
    Ok(angles.iter().sum())
}

/// `Psi` restricted to the non-coincident directions; defined for every pair.
pub fn psi_hat(sigma: &ShilovPoint, tau: &ShilovPoint, tol: &Tolerances) -> Result<f64> {
    let angles = relative_angles(sigma, tau, tol)?;
    let flags = coincidences(&angles, tol)?;
    Ok(angles
        .iter()
        .zip(&flags)
        .filter(|(_, f)| !**f)
        .map(|(a, _)| a)
        .sum())
}

fn m_from_angles(
    angles: &[f64],
    flags: &[bool],
    s: &LiftedPoint,
    t: &LiftedPoint,
    tol: &Tolerances,
) -> Result<IndexReport> {
    let r = angles.len() as f64;
    let sum: f64 = angles
        .iter()
        .zip(flags)
        .filter(|(_, f)| !**f)
        .map(|(a, _)| a)
        .sum();
    integral((sum - r * (s.theta() - t.theta())) / PI, tol)
}

fn m_transverse(s: &LiftedPoint, t: &LiftedPoint, tol: &Tolerances) -> Result<IndexReport> {
    let angles = relative_angles(s.point(), t.point(), tol)?;
    let flags = coincidences(&angles, tol)?;
    if let Some((a, _)) = angles.iter().zip(&flags).find(|(_, f)| **f) {
        return Err(Error::NotTransverse {
            distance: distance_to_pi(*a),
        });
    }
    m_from_angles(&angles, &flags, s, t, tol)
}

/// Souriau index `m(s, t) = (Psi_hat(s, t) - r (theta_s - theta_t)) / pi`.
///
/// For non-transverse pairs the value is cross-checked against the witness
/// form with an automatically chosen witness; disagreement is an error.
pub fn souriau_m(s: &LiftedPoint, t: &LiftedPoint, tol: &Tolerances) -> Result<IndexReport> {
    check_pair(s.point(), t.point())?;
    let angles = relative_angles(s.point(), t.point(), tol)?;
    let flags = coincidences(&angles, tol)?;
    let mut report = m_from_angles(&angles, &flags, s, t, tol)?;
    if flags.iter().any(|f| *f) {
        let witness = auto_witness(s.point(), t.point(), tol)?;
        let w = souriau_m_witness(s, t, &witness, tol)?;
        if w.value != report.value {
            return Err(Error::WitnessMismatch {
                spectral: report.value,
                witness: w.value,
            });
        }
        report.witnesses = vec![witness];
    }
    Ok(report)
}

/// A lift of `e^{ia} sigma`, with `a` in the widest gap left by the directions
/// that would make it non-transverse to `sigma` or `tau`.
pub fn auto_witness(
    sigma: &ShilovPoint,
    tau: &ShilovPoint,
    tol: &Tolerances,
) -> Result<LiftedPoint> {
    let mut forbidden: Vec<f64> = relative_angles(tau, sigma, tol)?
        .into_iter()
        .map(|b| (b - PI).rem_euclid(2.0 * PI))
        .collect();
    forbidden.push(0.0);
    forbidden.sort_by(f64::total_cmp);
    let mut best = (0.0, 0.0);
    for (i, &a) in forbidden.iter().enumerate() {
        let b = forbidden
            .get(i + 1)
            .copied()
            .unwrap_or(forbidden[0] + 2.0 * PI);
        if b - a > best.1 {
            best = (0.5 * (a + b), b - a);
        }
    }
    Ok(LiftedPoint::lift(sigma.rotate(best.0), 0))
}

/// Maslov index computed from a signature: with `x_i = c(P(tau^{-1/2}) sigma_i)`
/// real, the value is the signature of `x_2 - x_1`. Requires `tau` transverse to
/// both points.
pub fn iota_signature(
    s1: &ShilovPoint,
    s2: &ShilovPoint,
    tau: &ShilovPoint,
    tol: &Tolerances,
) -> Result<i64> {
    check_pair(s1, tau)?;
    check_pair(s2, tau)?;
    for s in [s1, s2] {
        if !transversal(s, tau, tol)? {
            return Err(Error::NotTransverse { distance: 0.0 });
        }
    }
    let root = tau.inverse().sqrt(None, tol.shilov)?;
    let to_real = |s: &ShilovPoint| -> Result<ElementC> {
        cayley_c(&root.value().cquad_rep_apply(s.value())?)
    };
    let x1 = to_real(s1)?;
    let x2 = to_real(s2)?;
    let d = (&x2 - &x1).re();
    let scale = x1.norm().max(x2.norm()).max(1.0);
    let eig = d.spectral()?.eigenvalues;
    Ok(eig
        .iter()
        .map(|l| {
            if l.abs() <= tol.rank * scale {
                0
            } else {
                l.signum() as i64
            }
        })
        .sum())
}

/// `m(s1, s2) = iota(s1, s2, tau) + m(s1, w) + m(w, s2)` for a witness `w`
/// transverse to both points, with the Maslov term taken from
/// [`iota_signature`].
pub fn souriau_m_witness(
    s1: &LiftedPoint,
    s2: &LiftedPoint,
    w: &LiftedPoint,
    tol: &Tolerances,
) -> Result<IndexReport> {
    check_pair(s1.point(), s2.point())?;
    check_pair(s1.point(), w.point())?;
    let iota = iota_signature(s1.point(), s2.point(), w.point(), tol)?;
    let a = m_transverse(s1, w, tol)?;
    let b = m_transverse(w, s2, tol)?;
    Ok(IndexReport {
        value: iota + a.value + b.value,
        raw: iota as f64 + a.raw + b.raw,
        residual: a.residual + b.residual,
        witnesses: vec![w.clone()],
    })
}

/// Maslov index of a triple: `(Psi_12 + Psi_23 + Psi_31) / pi` when the points
/// are pairwise transverse, otherwise `m_12 + m_23 + m_31` on canonical lifts.
pub fn maslov_iota(
    s1: &ShilovPoint,
    s2: &ShilovPoint,
    s3: &ShilovPoint,
    tol: &Tolerances,
) -> Result<IndexReport> {
    check_pair(s1, s2)?;
    check_pair(s2, s3)?;
    let pairs = [(s1, s2), (s2, s3), (s3, s1)];
    let mut transverse = true;
    for (a, b) in pairs {
        transverse &= transversal(a, b, tol)?;
    }
    if transverse {
        let mut sum = 0.0;
        for (a, b) in pairs {
            sum += psi(a, b, tol)?;
        }
        return integral(sum / PI, tol);
    }
    let lifts = [s1, s2, s3].map(|s| LiftedPoint::lift(s.clone(), 0));
    let mut out = IndexReport::exact(0);
    for (a, b) in [(0, 1), (1, 2), (2, 0)] {
        let m = souriau_m(&lifts[a], &lifts[b], tol)?;
        out.value += m.value;
        out.raw += m.raw;
        out.residual += m.residual;
        out.witnesses.extend(m.witnesses);
    }
    Ok(out)
}

/// Inertia index `(iota + mu_12 - mu_13 + mu_23 + r) / 2`.
pub fn inertia_j(
    s1: &ShilovPoint,
    s2: &ShilovPoint,
    s3: &ShilovPoint,
    tol: &Tolerances,
) -> Result<IndexReport> {
    let iota = maslov_iota(s1, s2, s3, tol)?;
    let r = s1.algebra().rank() as i64;
    let mus = mu(s1, s2, tol)? as i64 - mu(s1, s3, tol)? as i64 + mu(s2, s3, tol)? as i64;
    let mut out = halve(
        iota.value + mus + r,
        iota.raw + (mus + r) as f64,
        iota.residual,
    )?;
    out.witnesses = iota.witnesses;
    Ok(out)
}

fn nu_or_n(s: &LiftedPoint, t: &LiftedPoint, sign: i64, tol: &Tolerances) -> Result<IndexReport> {
    let m = souriau_m(s, t, tol)?;
    let mu = mu(s.point(), t.point(), tol)? as i64;
    let r = s.point().algebra().rank() as i64;
    let shift = sign * (mu + r);
    let mut out = halve(m.value + shift, m.raw + shift as f64, m.residual)?;
    out.witnesses = m.witnesses;
    Ok(out)
}

/// Arnold index `(m - mu - r) / 2`.
pub fn arnold_nu(s: &LiftedPoint, t: &LiftedPoint, tol: &Tolerances) -> Result<IndexReport> {
    nu_or_n(s, t, -1, tol)
}

/// Arnold-Leray-Maslov index `(m + mu + r) / 2`.
pub fn alm_n(s: &LiftedPoint, t: &LiftedPoint, tol: &Tolerances) -> Result<IndexReport> {
    nu_or_n(s, t, 1, tol)
}

/// Reduces each angle to `(-pi, pi]`.
pub fn principal_angles(angles: &[f64]) -> Vec<f64> {
    angles.iter().map(|a| principal_angle(*a)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{standard_frame, Algebra, ElementJ};
    use crate::shilov::ElementC;
    use num_complex::Complex64;

    fn algebras() -> [Algebra; 4] {
        [
            Algebra::sym_r(2),
            Algebra::sym_r(3),
            Algebra::herm_c(2),
            Algebra::spin(5),
        ]
    }

    fn minus_i_eps(alg: Algebra, k: usize) -> ShilovPoint {
        let eps = ElementJ::epq(alg, k, alg.rank() - k).unwrap();
        ShilovPoint::new(
            ElementC::from_real(&eps).scale(Complex64::new(0.0, -1.0)),
            1e-12,
        )
        .unwrap()
    }

    #[test]
    fn relative_element_fixed_values() {
        let tol = Tolerances::default();
        for alg in algebras() {
            let e = ShilovPoint::unit(alg);
            let w = relative_element(&e, &e, &tol).unwrap();
            assert!(w.value().distance(e.neg().value()) < 1e-12);
            let w = relative_element(&e, &e.neg(), &tol).unwrap();
            assert!(w.value().distance(e.value()) < 1e-12);
        }
    }

    #[test]
    fn mu_fixed_values() {
        let tol = Tolerances::default();
        for alg in algebras() {
            let e = ShilovPoint::unit(alg);
            assert_eq!(mu(&e, &e, &tol).unwrap(), alg.rank());
            assert_eq!(mu_via_corank(&e, &e, &tol).unwrap(), alg.rank());
            assert_eq!(mu(&e, &e.neg(), &tol).unwrap(), 0);
            assert_eq!(mu_via_corank(&e, &e.neg(), &tol).unwrap(), 0);
        }
    }

    #[test]
    fn psi_fixed_values() {
        let tol = Tolerances::default();
        for alg in algebras() {
            let r = alg.rank() as f64;
            let e = ShilovPoint::unit(alg);
            assert!(psi(&e, &e.neg(), &tol).unwrap().abs() < 1e-12);
            for k in 0..=alg.rank() {
                let p = psi(&minus_i_eps(alg, k), &e, &tol).unwrap();
                assert!((p - (2.0 * k as f64 - r) * PI / 2.0).abs() < 1e-12);
            }
            assert!(psi(&e, &e, &tol).is_err());
            assert_eq!(psi_hat(&e, &e, &tol).unwrap(), 0.0);
        }
    }

    #[test]
    fn souriau_fixed_values() {
        let tol = Tolerances::default();
        for alg in algebras() {
            let r = alg.rank();
            let ri = r as i64;
            let e = LiftedPoint::new(ShilovPoint::unit(alg), 0.0, 1e-12).unwrap();
            let me = LiftedPoint::new(ShilovPoint::unit(alg).neg(), PI, 1e-12).unwrap();
            assert_eq!(souriau_m(&e, &me, &tol).unwrap().value, ri);
            for k in 0..=r {
                let theta = (r as f64 - 2.0 * k as f64) * PI / (2.0 * r as f64);
                let s = LiftedPoint::new(minus_i_eps(alg, k), theta, 1e-12).unwrap();
                assert_eq!(souriau_m(&s, &e, &tol).unwrap().value, 2 * k as i64 - ri);
                assert_eq!(souriau_m(&me, &s, &tol).unwrap().value, -ri);
            }
        }
    }

    #[test]
    fn iota_orbit_values_and_inertia() {
        let tol = Tolerances::default();
        for alg in algebras() {
            let e = ShilovPoint::unit(alg);
            let r = alg.rank() as i64;
            for k in 0..=alg.rank() {
                let s3 = minus_i_eps(alg, k);
                let i = maslov_iota(&e, &e.neg(), &s3, &tol).unwrap();
                assert_eq!(i.value, 2 * k as i64 - r);
                assert!(i.residual < 1e-9);
                assert_eq!(
                    iota_signature(&e, &e.neg(), &s3, &tol).unwrap(),
                    2 * k as i64 - r
                );
                assert_eq!(inertia_j(&e, &e.neg(), &s3, &tol).unwrap().value, k as i64);
            }
            assert_eq!(inertia_j(&e, &e, &e, &tol).unwrap().value, r);
            assert_eq!(
                maslov_iota(&e, &e, &minus_i_eps(alg, 0), &tol)
                    .unwrap()
                    .value,
                0
            );
        }
    }

    #[test]
    fn arnold_of_a_point_with_itself() {
        let tol = Tolerances::default();
        for alg in algebras() {
            let e = LiftedPoint::lift(ShilovPoint::unit(alg), 0);
            let r = alg.rank() as i64;
            assert_eq!(arnold_nu(&e, &e, &tol).unwrap().value, -r);
            assert_eq!(alm_n(&e, &e, &tol).unwrap().value, r);
        }
    }

    #[test]
    fn coordinate_family_m_and_nu() {
        // sigma_1 = (-e, -pi), sigma_2 = (-(c_1 + .. + c_l) + sum e^{i phi_j} c_j, phi)
        // with r phi = -l pi + sum phi_j + 2 k pi.
        let tol = Tolerances::default();
        for alg in algebras() {
            let r = alg.rank();
            let frame = standard_frame(alg);
            let s1 = LiftedPoint::new(ShilovPoint::unit(alg).neg(), -PI, 1e-12).unwrap();
            for l in 0..=r {
                for k in -2i64..=2 {
                    let phis: Vec<f64> = (0..r)
                        .map(|j| {
                            if j < l {
                                PI
                            } else {
                                0.3 + 0.9 * j as f64 - 1.5
                            }
                        })
                        .collect();
                    let sum: f64 = phis[l..].iter().sum();
                    let phi = (-(l as f64) * PI + sum + 2.0 * k as f64 * PI) / r as f64;
                    let s2 = LiftedPoint::new(ShilovPoint::from_frame(&frame, &phis), phi, 1e-10)
                        .unwrap();
                    let m = souriau_m(&s1, &s2, &tol).unwrap();
                    assert_eq!(m.value, 2 * k + r as i64 - l as i64, "{alg} l={l} k={k}");
                    assert_eq!(mu(s1.point(), s2.point(), &tol).unwrap(), l);
                    assert_eq!(arnold_nu(&s1, &s2, &tol).unwrap().value, k - l as i64);
                }
            }
        }
    }

    #[test]
    fn gray_zone_is_refused_in_strict_mode() {
        let alg = Algebra::sym_r(2);
        let e = ShilovPoint::unit(alg);
        let near = e.rotate(3e-7);
        let strict = Tolerances::default();
        assert!(matches!(
            mu(&e, &near, &strict),
            Err(Error::GrayZone { .. })
        ));
        let permissive = Tolerances {
            mode: Mode::Permissive,
            ..strict
        };
        assert_eq!(mu(&e, &near, &permissive).unwrap(), 0);
    }
}
