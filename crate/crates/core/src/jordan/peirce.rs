use super::element::ElementJ;
use crate::error::{Error, Result};
use crate::linalg::RMat;

/// Components of `x` in `J(c,1) + J(c,1/2) + J(c,0)`.
#[derive(Debug, Clone)]
pub struct PeirceSplit {
    pub c: ElementJ,
    pub x1: ElementJ,
    pub xhalf: ElementJ,
    pub x0: ElementJ,
}

fn check_idempotent(c: &ElementJ, tol: f64) -> Result<()> {
    let residual = c.square().distance(c);
    if residual > tol * (1.0 + c.norm()) {
        return Err(Error::NotIdempotent { residual });
    }
    Ok(())
}

/// Projects `x` onto the eigenspaces of `L(c)` for eigenvalues 1, 1/2 and 0,
/// using the polynomials of `L(c)` that vanish on the other two eigenvalues.
pub fn peirce_decompose(c: &ElementJ, x: &ElementJ, tol: f64) -> Result<PeirceSplit> {
    c.algebra().check_same(&x.algebra())?;
    check_idempotent(c, tol)?;
    let cx = c.jmul_unchecked(x);
    let ccx = c.jmul_unchecked(&cx);
    let x1 = &ccx.scale(2.0) - &cx;
    let xhalf = (&cx - &ccx).scale(4.0);
    let x0 = &(x - &cx.scale(3.0)) + &ccx.scale(2.0);
    Ok(PeirceSplit {
        c: c.clone(),
        x1,
        xhalf,
        x0,
    })
}

/// The box operator `z [] w = L(zw) + [L(z), L(w)]`.
pub fn box_operator(z: &ElementJ, w: &ElementJ) -> RMat {
    let lz = z.lmul_operator();
    let lw = w.lmul_operator();
    z.jmul_unchecked(w).lmul_operator() + &lz * &lw - &lw * &lz
}

/// Applies the Frobenius transformation `exp(2 z [] c)` to `x`, for `z` in
/// `J(c,1/2)`, through its closed form on the Peirce components of `x`.
pub fn frobenius_apply(c: &ElementJ, z: &ElementJ, x: &ElementJ, tol: f64) -> Result<ElementJ> {
    c.algebra().check_same(&z.algebra())?;
    c.algebra().check_same(&x.algebra())?;
    let zs = peirce_decompose(c, z, tol)?;
    let residual = zs.xhalf.distance(z);
    if residual > tol * (1.0 + z.norm()) {
        return Err(Error::NotInHalfSpace { residual });
    }
    let xs = peirce_decompose(c, x, tol)?;
    let e_minus_c = &ElementJ::unit(c.algebra()) - c;

    let z_x1 = z.jmul_unchecked(&xs.x1);
    let yhalf = &z_x1.scale(2.0) + &xs.xhalf;
    let inner = &z.jmul_unchecked(&z_x1) + &z.jmul_unchecked(&xs.xhalf);
    let y0 = &e_minus_c.jmul_unchecked(&inner).scale(2.0) + &xs.x0;
    Ok(&(&xs.x1 + &yhalf) + &y0)
}
