//! JSON schemas for elements, lifts, words and paths, and the float format
//! used in every report.

use std::f64::consts::PI;
use std::fmt::Write as _;

use maslov_core::dynamics::BoundaryPath;
use maslov_core::jordan::{Algebra, AlgebraKind, ElementJ};
use maslov_core::shilov::{
    ElementC, Generator, GroupWord, LiftedPoint, LinearFactor, ShilovPoint, WordMode,
};
use maslov_core::Tolerances;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonAlgebra {
    pub kind: AlgebraKind,
    pub param: usize,
}

impl JsonAlgebra {
    pub fn algebra(&self) -> Result<Algebra, CliError> {
        Ok(Algebra::new(self.kind, self.param)?)
    }

    pub fn of(alg: Algebra) -> Self {
        JsonAlgebra {
            kind: alg.kind(),
            param: alg.param(),
        }
    }
}

/// A point of the boundary, or a lifted point when `theta` is present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonElement {
    pub algebra: JsonAlgebra,
    pub coords_re: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords_im: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
}

fn check_len(field: &str, alg: Algebra, v: &[f64]) -> Result<(), CliError> {
    if v.len() != alg.dim() {
        return Err(CliError::input(format!(
            "{field}: expected {} values for {alg}, got {}",
            alg.dim(),
            v.len()
        )));
    }
    if let Some(i) = v.iter().position(|x| !x.is_finite()) {
        return Err(CliError::input(format!("{field}[{i}]: non-finite value")));
    }
    Ok(())
}

fn real_element(field: &str, alg: Algebra, v: &[f64]) -> Result<ElementJ, CliError> {
    check_len(field, alg, v)?;
    Ok(ElementJ::new(alg, v.to_vec())?)
}

fn complex_element(
    field: &str,
    alg: Algebra,
    re: &[f64],
    im: Option<&[f64]>,
) -> Result<ElementC, CliError> {
    check_len(&format!("{field}coords_re"), alg, re)?;
    let zeros = vec![0.0; alg.dim()];
    let im = im.unwrap_or(&zeros);
    check_len(&format!("{field}coords_im"), alg, im)?;
    Ok(ElementC::new(alg, re.to_vec(), im.to_vec())?)
}

fn boundary_point(field: &str, value: ElementC, tol: &Tolerances) -> Result<ShilovPoint, CliError> {
    ShilovPoint::new(value, tol.shilov).map_err(|e| CliError::from(e).context(field))
}

impl JsonElement {
    pub fn algebra(&self) -> Result<Algebra, CliError> {
        self.algebra.algebra()
    }

    pub fn point(&self, tol: &Tolerances) -> Result<ShilovPoint, CliError> {
        let alg = self.algebra()?;
        let z = complex_element("", alg, &self.coords_re, self.coords_im.as_deref())?;
        boundary_point("coords", z, tol)
    }

    pub fn lift(&self, tol: &Tolerances) -> Result<LiftedPoint, CliError> {
        let theta = self
            .theta
            .ok_or_else(|| CliError::input("theta: a lifted point is required"))?;
        if !theta.is_finite() {
            return Err(CliError::input("theta: non-finite value"));
        }
        LiftedPoint::new(self.point(tol)?, theta, tol.shilov)
            .map_err(|e| CliError::from(e).context("theta"))
    }

    pub fn of_point(p: &ShilovPoint) -> Self {
        let v = p.value();
        JsonElement {
            algebra: JsonAlgebra::of(p.algebra()),
            coords_re: v.coords_re(),
            coords_im: Some(v.coords_im()),
            theta: None,
        }
    }

    pub fn of_lift(l: &LiftedPoint) -> Self {
        JsonElement {
            theta: Some(l.theta()),
            ..Self::of_point(l.point())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JsonMode {
    Tube,
    Unitary,
}

/// One factor of a `linear` generator: `exp L(a)` given by the coordinates of
/// `a`, or `exp [L(a), L(b)]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonFactor {
    Exp(Vec<f64>),
    Derivation { a: Vec<f64>, b: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum JsonGenerator {
    #[serde(rename = "translate")]
    Translate { u: Vec<f64> },
    #[serde(rename = "inversion")]
    Inversion,
    #[serde(rename = "linear")]
    Linear { exponents: Vec<JsonFactor> },
    #[serde(rename = "exp-iL")]
    ExpIL { v: Vec<f64> },
    #[serde(rename = "derivation")]
    Derivation { a: Vec<f64>, b: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonWord {
    pub algebra: JsonAlgebra,
    pub mode: JsonMode,
    pub generators: Vec<JsonGenerator>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_arg: Option<f64>,
}

impl JsonGenerator {
    fn parse(&self, k: usize, alg: Algebra) -> Result<Generator, CliError> {
        let field = |name: &str| format!("generators[{k}].{name}");
        Ok(match self {
            JsonGenerator::Translate { u } => {
                Generator::Translate(real_element(&field("u"), alg, u)?)
            }
            JsonGenerator::Inversion => Generator::Inversion,
            JsonGenerator::Linear { exponents } => Generator::Linear(
                exponents
                    .iter()
                    .enumerate()
                    .map(|(j, f)| match f {
                        JsonFactor::Exp(a) => Ok(LinearFactor::ExpL(real_element(
                            &field(&format!("exponents[{j}]")),
                            alg,
                            a,
                        )?)),
                        JsonFactor::Derivation { a, b } => Ok(LinearFactor::ExpDerivation(
                            real_element(&field(&format!("exponents[{j}].a")), alg, a)?,
                            real_element(&field(&format!("exponents[{j}].b")), alg, b)?,
                        )),
                    })
                    .collect::<Result<_, CliError>>()?,
            ),
            JsonGenerator::ExpIL { v } => Generator::ExpIL(real_element(&field("v"), alg, v)?),
            JsonGenerator::Derivation { a, b } => Generator::Derivation(
                real_element(&field("a"), alg, a)?,
                real_element(&field("b"), alg, b)?,
            ),
        })
    }

    fn of(g: &Generator) -> Self {
        let c = |x: &ElementJ| x.coords().to_vec();
        match g {
            Generator::Translate(u) => JsonGenerator::Translate { u: c(u) },
            Generator::Inversion => JsonGenerator::Inversion,
            Generator::Linear(fs) => JsonGenerator::Linear {
                exponents: fs
                    .iter()
                    .map(|f| match f {
                        LinearFactor::ExpL(a) => JsonFactor::Exp(c(a)),
                        LinearFactor::ExpDerivation(a, b) => {
                            JsonFactor::Derivation { a: c(a), b: c(b) }
                        }
                    })
                    .collect(),
            },
            Generator::ExpIL(v) => JsonGenerator::ExpIL { v: c(v) },
            Generator::Derivation(a, b) => JsonGenerator::Derivation { a: c(a), b: c(b) },
        }
    }
}

impl JsonWord {
    pub fn word(&self) -> Result<GroupWord, CliError> {
        let alg = self.algebra.algebra()?;
        let gens = self
            .generators
            .iter()
            .enumerate()
            .map(|(k, g)| g.parse(k, alg))
            .collect::<Result<Vec<_>, _>>()?;
        let mode = match self.mode {
            JsonMode::Tube => WordMode::Tube,
            JsonMode::Unitary => WordMode::Unitary,
        };
        Ok(GroupWord::new(alg, mode, gens, self.base_arg)?)
    }

    pub fn of(w: &GroupWord) -> Self {
        JsonWord {
            algebra: JsonAlgebra::of(w.algebra()),
            mode: match w.mode() {
                WordMode::Tube => JsonMode::Tube,
                WordMode::Unitary => JsonMode::Unitary,
            },
            generators: w.generators().iter().map(JsonGenerator::of).collect(),
            base_arg: w.explicit_base_arg(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonSample {
    pub t: f64,
    pub coords_re: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords_im: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonStart {
    pub coords_re: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords_im: Option<Vec<f64>>,
}

fn default_intervals() -> usize {
    32
}

/// `sigma(t) = exp(i L(t v)) e^{i (a0 + t (a1 - a0))} start`, evaluated on
/// demand so the path can be refined.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonFlow {
    pub start: JsonStart,
    pub phase: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<f64>>,
    #[serde(default = "default_intervals")]
    pub intervals: usize,
}

/// A path given either by samples on `[0, 1]` or by a flow.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonPath {
    pub algebra: JsonAlgebra,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<JsonSample>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flow: Option<JsonFlow>,
}

impl JsonPath {
    pub fn path(&self, tol: &Tolerances) -> Result<BoundaryPath, CliError> {
        let alg = self.algebra.algebra()?;
        match (&self.samples, &self.flow) {
            (Some(samples), None) => {
                let pts = samples
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        let field = format!("samples[{i}].");
                        let z = complex_element(&field, alg, &s.coords_re, s.coords_im.as_deref())?;
                        Ok((s.t, boundary_point(&field, z, tol)?))
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                Ok(BoundaryPath::from_samples(pts)?)
            }
            (None, Some(flow)) => {
                let z = complex_element(
                    "flow.start.",
                    alg,
                    &flow.start.coords_re,
                    flow.start.coords_im.as_deref(),
                )?;
                let start = boundary_point("flow.start", z, tol)?;
                let v = flow
                    .v
                    .as_ref()
                    .map(|v| real_element("flow.v", alg, v))
                    .transpose()?;
                if flow.phase.iter().any(|a| !a.is_finite()) {
                    return Err(CliError::input("flow.phase: non-finite value"));
                }
                if flow.intervals == 0 {
                    return Err(CliError::input("flow.intervals: must be positive"));
                }
                let [a0, a1] = flow.phase;
                Ok(BoundaryPath::from_fn(
                    move |t| {
                        let p = start.rotate(a0 + t * (a1 - a0));
                        match &v {
                            Some(v) => GroupWord::new(
                                alg,
                                WordMode::Unitary,
                                vec![Generator::ExpIL(v.scale(t))],
                                None,
                            )?
                            .apply_point(&p, 1e-7),
                            None => Ok(p),
                        }
                    },
                    flow.intervals,
                )?)
            }
            _ => Err(CliError::input(
                "path: exactly one of 'samples' and 'flow' is required",
            )),
        }
    }

    pub fn of_samples(p: &BoundaryPath) -> Self {
        JsonPath {
            algebra: JsonAlgebra::of(p.algebra()),
            samples: Some(
                p.samples()
                    .iter()
                    .map(|(t, s)| JsonSample {
                        t: *t,
                        coords_re: s.value().coords_re(),
                        coords_im: Some(s.value().coords_im()),
                    })
                    .collect(),
            ),
            flow: None,
        }
    }

    /// A full loop `e^{2 pi i t} start`.
    pub fn full_loop(start: &ShilovPoint, intervals: usize) -> Self {
        let v = start.value();
        JsonPath {
            algebra: JsonAlgebra::of(start.algebra()),
            samples: None,
            flow: Some(JsonFlow {
                start: JsonStart {
                    coords_re: v.coords_re(),
                    coords_im: Some(v.coords_im()),
                },
                phase: [0.0, 2.0 * PI],
                v: None,
                intervals,
            }),
        }
    }
}

pub fn tolerances_json(tol: &Tolerances) -> Value {
    serde_json::to_value(tol).expect("tolerances serialize")
}

fn write_float(x: f64, out: &mut String) {
    if x.is_finite() {
        let _ = write!(out, "{x:.16e}");
    } else {
        out.push_str("null");
    }
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize, out: &mut String| out.extend(std::iter::repeat_n(' ', n));
    match v {
        Value::Number(n) if n.is_f64() => write_float(n.as_f64().unwrap_or(f64::NAN), out),
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(x, indent, out);
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                pad(indent + 2, out);
                write_value(x, indent + 2, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(indent, out);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                pad(indent + 2, out);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(x, indent + 2, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(indent, out);
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

/// Pretty JSON with every float written with 17 significant digits.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report serializes");
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    out
}
