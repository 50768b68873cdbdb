use serde::Serialize;

use crate::error::{Error, Result};
use crate::indices::souriau_m;
use crate::jordan::Algebra;
use crate::shilov::{GroupWord, LiftedPoint, ShilovPoint};
use crate::tolerance::Tolerances;

/// The base point `(-e, theta)` with `theta = Arg det(-e) / r`. It is sent to
/// `0` by the Cayley transform, so words whose first tube step is an inversion
/// need another base point.
pub fn default_base_point(alg: Algebra) -> LiftedPoint {
    LiftedPoint::lift(ShilovPoint::unit(alg).neg(), 0)
}

/// `c(g) = m(g . o, o)`.
pub fn quasimorphism_c(g: &GroupWord, base: &LiftedPoint, tol: &Tolerances) -> Result<i64> {
    let moved = g.act_lift(base, tol.shilov)?;
    Ok(souriau_m(&moved, base, tol)?.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RotationEstimate {
    pub k: u32,
    /// `c(g^K)`.
    pub c_power: i64,
    pub tau_estimate: f64,
    /// `r / K`.
    pub tau_error_bound: f64,
    /// `-tau / 2` reduced to `[0, 1)`.
    pub rho_mod1: f64,
    /// `r / (2K)`.
    pub error_bound: f64,
}

/// `c(g^K)`, with `g^K . o` obtained by `K` successive lifted actions, each
/// unwrapping its own determination.
fn c_power(g: &GroupWord, k: u32, base: &LiftedPoint, tol: &Tolerances) -> Result<i64> {
    let mut x = base.clone();
    for _ in 0..k {
        x = g.act_lift(&x, tol.shilov)?;
    }
    Ok(souriau_m(&x, base, tol)?.value)
}

/// Estimates of the translation number `tau(g) = lim c(g^K) / K` and the
/// rotation number `rho = -tau / 2 mod 1`.
pub fn rotation_estimate(
    g: &GroupWord,
    k: u32,
    base: &LiftedPoint,
    tol: &Tolerances,
) -> Result<RotationEstimate> {
    if k == 0 {
        return Err(Error::InvalidInput("K must be at least 1".into()));
    }
    let r = g.algebra().rank() as f64;
    let c = c_power(g, k, base, tol)?;
    let tau = c as f64 / k as f64;
    Ok(RotationEstimate {
        k,
        c_power: c,
        tau_estimate: tau,
        tau_error_bound: r / k as f64,
        rho_mod1: (-0.5 * tau).rem_euclid(1.0) + 0.0,
        error_bound: r / (2.0 * k as f64),
    })
}

/// `(c(g^K) / K, r / K)`.
pub fn translation_tau(
    g: &GroupWord,
    k: u32,
    base: &LiftedPoint,
    tol: &Tolerances,
) -> Result<(f64, f64)> {
    let e = rotation_estimate(g, k, base, tol)?;
    Ok((e.tau_estimate, e.tau_error_bound))
}

/// `(-tau / 2 mod 1, r / (2K))`.
pub fn rotation_rho(
    g: &GroupWord,
    k: u32,
    base: &LiftedPoint,
    tol: &Tolerances,
) -> Result<(f64, f64)> {
    let e = rotation_estimate(g, k, base, tol)?;
    Ok((e.rho_mod1, e.error_bound))
}

/// Distance between two values on the circle `R / Z`.
pub fn circle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}
