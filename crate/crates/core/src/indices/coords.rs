//! Closed-form values on a shared Jordan frame, used as independent oracles.

use std::f64::consts::PI;

use crate::shilov::principal_angle;

/// Angular separation under which two points of the circle coincide.
pub const ORD_EPS: f64 = 1e-9;

fn same_point(a: f64, b: f64) -> bool {
    principal_angle(a - b).abs() < ORD_EPS
}

/// Cyclic order of three points `e^{ia}, e^{ib}, e^{ic}` of the circle: 0 when
/// two coincide, +1 when `e^{ib}` lies on the counterclockwise arc from `e^{ia}`
/// to `e^{ic}`, -1 otherwise.
pub fn ord(a: f64, b: f64, c: f64) -> i64 {
    if same_point(a, b) || same_point(b, c) || same_point(a, c) {
        return 0;
    }
    let tau = 2.0 * PI;
    if (b - a).rem_euclid(tau) < (c - a).rem_euclid(tau) {
        1
    } else {
        -1
    }
}

/// Maslov index of three points diagonal in one frame.
pub fn iota_shared_frame(a: &[f64], b: &[f64], c: &[f64]) -> i64 {
    assert!(a.len() == b.len() && b.len() == c.len());
    a.iter()
        .zip(b)
        .zip(c)
        .map(|((&x, &y), &z)| ord(x, y, z))
        .sum()
}

/// Souriau index of `(sum e^{i a_j} c_j, theta_a)` and `(sum e^{i b_j} c_j, theta_b)`,
/// summing principal values of `a_j - b_j + pi` over the directions where the
/// angles differ. Returns the unrounded value.
pub fn m_shared_frame_raw(a: &[f64], theta_a: f64, b: &[f64], theta_b: f64) -> f64 {
    assert_eq!(a.len(), b.len());
    let r = a.len() as f64;
    let sum: f64 = a
        .iter()
        .zip(b)
        .filter(|(x, y)| !same_point(**x, **y))
        .map(|(x, y)| principal_angle(x - y + PI))
        .sum();
    (sum - r * (theta_a - theta_b)) / PI
}

pub fn m_shared_frame(a: &[f64], theta_a: f64, b: &[f64], theta_b: f64) -> i64 {
    m_shared_frame_raw(a, theta_a, b, theta_b).round() as i64
}
