use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::boundary::ShilovPoint;
use super::complex::{ElementC, I};
use super::lift::LiftedPoint;
use crate::error::{Error, Result};
use crate::jordan::{Algebra, ElementJ};
use crate::linalg::{expm, CMat};

/// Initial number of samples along `t -> t z` when unwrapping the argument.
pub const UNWRAP_STEPS: usize = 64;
/// Finest subdivision allowed by adaptive unwrapping, as a power of two.
/// Largest phase mismatch `act_lift` re-anchors instead of rejecting.
pub const LIFT_DRIFT: f64 = 1e-4;

pub const UNWRAP_MAX_LEVEL: u32 = 14;

/// One exponential factor of a structure-group operator.
#[derive(Debug, Clone, PartialEq)]
pub enum LinearFactor {
    /// `exp L(a)`.
    ExpL(ElementJ),
    /// `exp [L(a), L(b)]`.
    ExpDerivation(ElementJ, ElementJ),
}

impl LinearFactor {
    fn operator(&self) -> CMat {
        match self {
            LinearFactor::ExpL(a) => expm(&ElementC::from_real(a).lmul_operator()),
            LinearFactor::ExpDerivation(a, b) => derivation_exp(a, b),
        }
    }

    fn inverse(&self) -> Self {
        match self {
            LinearFactor::ExpL(a) => LinearFactor::ExpL(-a),
            LinearFactor::ExpDerivation(a, b) => LinearFactor::ExpDerivation(b.clone(), a.clone()),
        }
    }

    fn algebra(&self) -> Algebra {
        match self {
            LinearFactor::ExpL(a) | LinearFactor::ExpDerivation(a, _) => a.algebra(),
        }
    }
}

fn derivation_exp(a: &ElementJ, b: &ElementJ) -> CMat {
    let la = ElementC::from_real(a).lmul_operator();
    let lb = ElementC::from_real(b).lmul_operator();
    expm(&(&la * &lb - &lb * &la))
}

/// Generators of the conformal group.
///
/// `Translate`, `Inversion` and `Linear` act on the tube `J + i Omega` and
/// reach the bounded domain through the Cayley transforms; `ExpIL` and
/// `Derivation` act linearly on the bounded domain.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    Translate(ElementJ),
    Inversion,
    Linear(Vec<LinearFactor>),
    ExpIL(ElementJ),
    Derivation(ElementJ, ElementJ),
}

impl Generator {
    pub fn is_tube(&self) -> bool {
        matches!(
            self,
            Generator::Translate(_) | Generator::Inversion | Generator::Linear(_)
        )
    }

    pub fn name(&self) -> &'static str {
        match self {
            Generator::Translate(_) => "translate",
            Generator::Inversion => "inversion",
            Generator::Linear(_) => "linear",
            Generator::ExpIL(_) => "exp-iL",
            Generator::Derivation(..) => "derivation",
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Generator::Translate(u) => Generator::Translate(-u),
            Generator::Inversion => Generator::Inversion,
            Generator::Linear(f) => {
                Generator::Linear(f.iter().rev().map(|x| x.inverse()).collect())
            }
            Generator::ExpIL(v) => Generator::ExpIL(-v),
            Generator::Derivation(a, b) => Generator::Derivation(b.clone(), a.clone()),
        }
    }

    fn check_algebra(&self, alg: Algebra) -> Result<()> {
        match self {
            Generator::Translate(u) | Generator::ExpIL(u) => alg.check_same(&u.algebra()),
            Generator::Derivation(a, b) => {
                alg.check_same(&a.algebra())?;
                alg.check_same(&b.algebra())
            }
            Generator::Linear(f) => f.iter().try_for_each(|x| alg.check_same(&x.algebra())),
            Generator::Inversion => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WordMode {
    /// Any generators; tube generators are conjugated by the Cayley transforms.
    Tube,
    /// Only `ExpIL` and `Derivation`: a linear map of the complexification.
    Unitary,
}

#[derive(Debug, Clone)]
enum Step {
    Linear(CMat),
    Translate(ElementC),
    Inversion,
    CayleyC,
    CayleyP,
}

#[derive(Debug, Clone)]
struct Compiled {
    /// Steps in order of application, each tagged with its word position.
    steps: Vec<(usize, Step)>,
}

fn position(pos: usize, what: &str) -> String {
    format!("generator {pos} ({what})")
}

impl Compiled {
    fn eval(&self, z: &ElementC, want_diff: bool) -> Result<(ElementC, Option<CMat>)> {
        let alg = z.algebra();
        let n = alg.dim();
        let e = ElementC::unit(alg);
        let two = Complex64::new(2.0, 0.0);
        let mut z = z.clone();
        let mut d = want_diff.then(|| CMat::identity(n, n));
        for (pos, step) in &self.steps {
            let (next, ds) = match step {
                Step::Linear(op) => (ElementC::apply(op, &z), want_diff.then(|| op.clone())),
                Step::Translate(u) => (&z + u, None),
                Step::Inversion => {
                    let inv = z.cinverse().map_err(|_| {
                        Error::domain(position(*pos, "inversion"), "point is not invertible")
                    })?;
                    let ds = want_diff.then(|| inv.quad_operator());
                    (-&inv, ds)
                }
                Step::CayleyC => {
                    let inv = (&e - &z).cinverse().map_err(|_| {
                        Error::domain(position(*pos, "cayley c"), "e - w is not invertible")
                    })?;
                    let ds = want_diff.then(|| inv.quad_operator() * (two * I));
                    ((&inv.scale(two) - &e).scale(I), ds)
                }
                Step::CayleyP => {
                    let inv = (&z + &e.scale(I)).cinverse().map_err(|_| {
                        Error::domain(position(*pos, "cayley p"), "z + ie is not invertible")
                    })?;
                    let ds = want_diff.then(|| inv.quad_operator() * (two * I));
                    (&e - &inv.scale(two * I), ds)
                }
            };
            if let (Some(acc), Some(ds)) = (d.as_mut(), ds) {
                *acc = ds * &*acc;
            }
            z = next;
        }
        Ok((z, d))
    }

    fn cocycle(&self, z: &ElementC) -> Result<Complex64> {
        let (_, d) = self.eval(z, true)?;
        let e = ElementC::unit(z.algebra());
        Ok(ElementC::apply(&d.expect("differential requested"), &e).cdet())
    }
}

/// A word `g = g_1 g_2 ... g_k` in the generators (so `g_k` acts first),
/// together with the value `base_arg` of the argument determination at 0.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupWord {
    alg: Algebra,
    mode: WordMode,
    generators: Vec<Generator>,
    base_arg: Option<f64>,
}

impl GroupWord {
    pub fn new(
        alg: Algebra,
        mode: WordMode,
        generators: Vec<Generator>,
        base_arg: Option<f64>,
    ) -> Result<Self> {
        for (k, g) in generators.iter().enumerate() {
            g.check_algebra(alg)?;
            if mode == WordMode::Unitary && g.is_tube() {
                return Err(Error::InvalidInput(format!(
                    "generator {k}: '{}' is not allowed in a unitary word",
                    g.name()
                )));
            }
        }
        if let Some(b) = base_arg {
            if !b.is_finite() {
                return Err(Error::InvalidInput("base_arg: non-finite value".into()));
            }
        }
        let word = GroupWord {
            alg,
            mode,
            generators,
            base_arg,
        };
        if let Some(b) = base_arg {
            let j0 = word.cocycle(&ElementC::zero(alg))?;
            let mismatch = (Complex64::from_polar(1.0, b) - j0 / j0.norm()).norm();
            if mismatch > 1e-8 {
                return Err(Error::InvalidInput(format!(
                    "base_arg {b} is not an argument of j(g, 0) = {j0}"
                )));
            }
        }
        Ok(word)
    }

    pub fn identity(alg: Algebra) -> Self {
        GroupWord {
            alg,
            mode: WordMode::Unitary,
            generators: Vec::new(),
            base_arg: None,
        }
    }

    /// The deck transformation `T`: the identity map with determination `2 pi`.
    pub fn deck(alg: Algebra) -> Self {
        GroupWord {
            base_arg: Some(2.0 * PI),
            ..GroupWord::identity(alg)
        }
    }

    /// `exp(i L(phase e))`, multiplication by `e^{i phase}`.
    pub fn scalar_phase(alg: Algebra, phase: f64) -> Self {
        let v = ElementJ::unit(alg).scale(phase);
        GroupWord {
            alg,
            mode: WordMode::Unitary,
            generators: vec![Generator::ExpIL(v)],
            base_arg: None,
        }
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    pub fn mode(&self) -> WordMode {
        self.mode
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn explicit_base_arg(&self) -> Option<f64> {
        self.base_arg
    }

    pub fn with_base_arg(&self, base_arg: Option<f64>) -> Result<Self> {
        GroupWord::new(self.alg, self.mode, self.generators.clone(), base_arg)
    }

    pub fn is_unitary(&self) -> bool {
        self.generators.iter().all(|g| !g.is_tube())
    }

    fn compile(&self) -> Compiled {
        let mut steps = Vec::new();
        let mut in_tube = false;
        let mut last = 0;
        for (pos, g) in self.generators.iter().enumerate().rev() {
            if g.is_tube() && !in_tube {
                steps.push((pos, Step::CayleyC));
                in_tube = true;
            } else if !g.is_tube() && in_tube {
                steps.push((last, Step::CayleyP));
                in_tube = false;
            }
            let step = match g {
                Generator::Translate(u) => Step::Translate(ElementC::from_real(u)),
                Generator::Inversion => Step::Inversion,
                Generator::Linear(f) => {
                    let n = self.alg.dim();
                    Step::Linear(
                        f.iter()
                            .fold(CMat::identity(n, n), |acc, x| acc * x.operator()),
                    )
                }
                Generator::ExpIL(v) => {
                    Step::Linear(expm(&(ElementC::from_real(v).lmul_operator() * I)))
                }
                Generator::Derivation(a, b) => Step::Linear(derivation_exp(a, b)),
            };
            steps.push((pos, step));
            last = pos;
        }
        if in_tube {
            steps.push((last, Step::CayleyP));
        }
        Compiled { steps }
    }

    fn check(&self, z: &ElementC) -> Result<()> {
        self.alg.check_same(&z.algebra())
    }

    /// `g(z)` for `z` in the closure of the bounded domain.
    pub fn apply(&self, z: &ElementC) -> Result<ElementC> {
        self.check(z)?;
        Ok(self.compile().eval(z, false)?.0)
    }

    /// `g(sigma)`, checked to stay on the Shilov boundary within `tol`.
    pub fn apply_point(&self, sigma: &ShilovPoint, tol: f64) -> Result<ShilovPoint> {
        ShilovPoint::new(self.apply(sigma.value())?, tol)
    }

    /// The complex Jacobian `Dg(z)` as a matrix on coordinates.
    pub fn differential(&self, z: &ElementC) -> Result<CMat> {
        self.check(z)?;
        Ok(self
            .compile()
            .eval(z, true)?
            .1
            .expect("differential requested"))
    }

    /// `j(g, z) = chi(Dg(z))` with `chi(A) = det(A e)`.
    pub fn cocycle(&self, z: &ElementC) -> Result<Complex64> {
        self.check(z)?;
        self.compile().cocycle(z)
    }

    /// `chi(u)` for a unitary word, where `j(u, z)` does not depend on `z`.
    pub fn chi(&self) -> Result<Complex64> {
        if !self.is_unitary() {
            return Err(Error::InvalidInput("chi: word is not unitary".into()));
        }
        self.cocycle(&ElementC::zero(self.alg))
    }

    fn base_arg_compiled(&self, c: &Compiled) -> Result<f64> {
        match self.base_arg {
            Some(b) => Ok(b),
            None => Ok(c.cocycle(&ElementC::zero(self.alg))?.arg()),
        }
    }

    /// `phi(g, 0)`: the explicit value, or the principal argument of `j(g, 0)`.
    pub fn base_arg(&self) -> Result<f64> {
        self.base_arg_compiled(&self.compile())
    }

    /// Continuous determination `phi(g, z)` of `arg j(g, .)`, obtained by
    /// unwrapping along the segment `t z`, `t in [0, 1]`, from `phi(g, 0)`.
    pub fn determination(&self, z: &ElementC) -> Result<f64> {
        self.check(z)?;
        let c = self.compile();
        let base = self.base_arg_compiled(&c)?;
        let j_at = |t: f64| c.cocycle(&z.scale(Complex64::new(t, 0.0)));
        let mut phi = base;
        let mut t0 = 0.0;
        let mut j0 = j_at(0.0)?;
        for i in 1..=UNWRAP_STEPS {
            let t1 = i as f64 / UNWRAP_STEPS as f64;
            let j1 = j_at(t1)?;
            phi += unwrap_increment(&j_at, t0, j0, t1, j1)?;
            t0 = t1;
            j0 = j1;
        }
        Ok(phi)
    }

    /// `(g sigma, theta + phi(g, sigma) / r)`. Rounding in the image shows up
    /// as a small mismatch between `det(g sigma)` and `e^{i r theta}`; up to
    /// [`LIFT_DRIFT`] it is absorbed by re-reading `theta` from the image.
    pub fn act_lift(&self, lifted: &LiftedPoint, tol: f64) -> Result<LiftedPoint> {
        let sigma = lifted.point();
        let image = self.apply_point(sigma, tol)?;
        let phi = self.determination(sigma.value())?;
        let r = self.alg.rank() as f64;
        let theta = lifted.theta() + phi / r;
        let drift = (image.det() / Complex64::from_polar(1.0, r * theta)).arg();
        if drift.abs() > LIFT_DRIFT {
            return Err(Error::BadLift {
                residual: drift.abs(),
            });
        }
        LiftedPoint::new(image, theta + drift / r, tol)
    }

    /// The product `self * other` (`other` acts first), with determination
    /// `phi(gh, 0) = phi(g, h(0)) + phi(h, 0)`.
    pub fn compose(&self, other: &GroupWord) -> Result<GroupWord> {
        self.alg.check_same(&other.alg)?;
        let h0 = other.apply(&ElementC::zero(self.alg))?;
        let base = self.determination(&h0)? + other.base_arg()?;
        let mode = if self.mode == WordMode::Unitary && other.mode == WordMode::Unitary {
            WordMode::Unitary
        } else {
            WordMode::Tube
        };
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        Ok(GroupWord {
            alg: self.alg,
            mode,
            generators,
            base_arg: Some(base),
        })
    }

    /// The inverse word, with `phi(g^{-1}, 0) = -phi(g, g^{-1}(0))`.
    pub fn inverse(&self) -> Result<GroupWord> {
        let mut inv = GroupWord {
            alg: self.alg,
            mode: self.mode,
            generators: self.generators.iter().rev().map(|g| g.inverse()).collect(),
            base_arg: None,
        };
        let pre = inv.apply(&ElementC::zero(self.alg))?;
        inv.base_arg = Some(-self.determination(&pre)?);
        Ok(inv)
    }

    /// `g^k` for any integer `k`, built by repeated composition.
    pub fn power(&self, k: i64) -> Result<GroupWord> {
        if k < 0 {
            return self.inverse()?.power(-k);
        }
        let mut acc = GroupWord {
            mode: self.mode,
            ..GroupWord::identity(self.alg)
        };
        for _ in 0..k {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }
}

fn unwrap_increment(
    j_at: &impl Fn(f64) -> Result<Complex64>,
    t0: f64,
    j0: Complex64,
    t1: f64,
    j1: Complex64,
) -> Result<f64> {
    let jump = (j1 / j0).arg();
    if jump.abs() <= PI / 2.0 {
        return Ok(jump);
    }
    if t1 - t0 <= 1.0 / (UNWRAP_STEPS as f64 * 2f64.powi(UNWRAP_MAX_LEVEL as i32)) {
        return Err(Error::UnwrapAmbiguity { t: t0, jump });
    }
    let tm = 0.5 * (t0 + t1);
    let jm = j_at(tm)?;
    Ok(unwrap_increment(j_at, t0, j0, tm, jm)? + unwrap_increment(j_at, tm, jm, t1, j1)?)
}
