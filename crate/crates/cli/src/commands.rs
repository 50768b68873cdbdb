use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use maslov_core::dynamics::{
    arnold_number, default_base_point, pair_path_index, rotation_estimate, write_flow_csv,
    PathIndex,
};
use maslov_core::indices::{
    alm_n, arnold_nu, inertia_j, maslov_iota, mu, mu_via_corank, souriau_m, souriau_m_witness,
    IndexReport,
};
use maslov_core::jordan::{Algebra, AlgebraKind};
use maslov_core::random::{
    random_affine_word, random_lift, random_mixed_word, random_point, random_unitary_word, rng,
};
use maslov_core::selftest::{self, Level};
use maslov_core::{Mode, Tolerances};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::json::{to_json_string, tolerances_json, JsonAlgebra, JsonElement, JsonPath, JsonWord};

#[derive(Debug, Parser)]
#[command(
    name = "maslov-kit",
    version,
    about = "Maslov-type indices on the Shilov boundary of tube-type domains"
)]
pub struct Cli {
    #[command(flatten)]
    pub tol: TolArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct TolArgs {
    /// Distance to pi under which an eigenangle counts as a coincidence.
    #[arg(long, global = true)]
    pub tol_transverse: Option<f64>,
    /// Largest accepted distance between a raw index and its rounded value.
    #[arg(long, global = true)]
    pub tol_int: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeArg>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Strict,
    Permissive,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum IndexOp {
    Mu,
    Iota,
    Souriau,
    Inertia,
    Arnold,
    Alm,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PathOp {
    Arnold,
    Pair,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GenKind {
    Point,
    Lift,
    UnitaryWord,
    TubeWord,
    AffineWord,
    Loop,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum LevelArg {
    Quick,
    Full,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an index on points (mu, iota, inertia) or lifted points (souriau, arnold, alm).
    Compute {
        #[arg(long, value_enum)]
        op: IndexOp,
        /// Element files; souriau takes an optional third lift used as witness.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Translation and rotation number estimates of a word.
    Rotation {
        word: PathBuf,
        #[arg(long, default_value_t = 32)]
        k: u32,
        /// Lifted base point; defaults to (-e, theta).
        #[arg(long)]
        base: Option<PathBuf>,
    },
    /// Signed crossing count along a path (arnold: path and base point; pair: two paths).
    Path {
        #[arg(long, value_enum)]
        op: PathOp,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Writes the eigenangle strands as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Seeded random inputs in the JSON schemas above.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long, default_value = "sym-r")]
        algebra: String,
        #[arg(long, default_value_t = 2)]
        param: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of generators in generated words.
        #[arg(long, default_value_t = 3)]
        len: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs the acceptance criteria.
    Selftest {
        #[arg(long, value_enum, default_value = "quick")]
        level: LevelArg,
        #[arg(long, default_value_t = 20240917)]
        seed: u64,
    },
}

impl TolArgs {
    pub fn tolerances(&self) -> Result<Tolerances, CliError> {
        let mut tol = Tolerances::default();
        if let Some(t) = self.tol_transverse {
            if !(t > 0.0 && t < 0.1) {
                return Err(CliError::input(format!(
                    "--tol-transverse: {t} is not in (0, 0.1)"
                )));
            }
            tol.transverse = t;
        }
        if let Some(t) = self.tol_int {
            if !(t > 0.0 && t < 0.5) {
                return Err(CliError::input(format!(
                    "--tol-int: {t} is not in (0, 0.5)"
                )));
            }
            tol.int = t;
        }
        if let Some(m) = self.mode {
            tol.mode = match m {
                ModeArg::Strict => Mode::Strict,
                ModeArg::Permissive => Mode::Permissive,
            };
        }
        Ok(tol)
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: Result<T, CliError>) -> Result<T, CliError> {
    r.map_err(|e| e.context(&path.display().to_string()))
}

fn expect_inputs(what: &str, inputs: &[PathBuf], allowed: &[usize]) -> Result<(), CliError> {
    if allowed.contains(&inputs.len()) {
        Ok(())
    } else {
        Err(CliError::input(format!(
            "{what}: expected {} input files, got {}",
            allowed
                .iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join(" or "),
            inputs.len()
        )))
    }
}

fn index_json(op: &str, alg: Algebra, rep: &IndexReport, tol: &Tolerances) -> Value {
    let mut v = json!({
        "op": op,
        "algebra": JsonAlgebra::of(alg),
        "value": rep.value,
        "raw": rep.raw,
        "residual": rep.residual,
        "tolerances": tolerances_json(tol),
    });
    if !rep.witnesses.is_empty() {
        v["witnesses"] = serde_json::to_value(
            rep.witnesses
                .iter()
                .map(JsonElement::of_lift)
                .collect::<Vec<_>>(),
        )
        .expect("witnesses serialize");
    }
    v
}

fn compute(op: IndexOp, inputs: &[PathBuf], tol: &Tolerances) -> Result<Value, CliError> {
    let elements = inputs
        .iter()
        .map(|p| read_json::<JsonElement>(p))
        .collect::<Result<Vec<_>, _>>()?;
    let points = || {
        elements
            .iter()
            .zip(inputs)
            .map(|(e, p)| in_file(p, e.point(tol)))
            .collect::<Result<Vec<_>, _>>()
    };
    let lifts = || {
        elements
            .iter()
            .zip(inputs)
            .map(|(e, p)| in_file(p, e.lift(tol)))
            .collect::<Result<Vec<_>, _>>()
    };
    let alg = in_file(&inputs[0], elements[0].algebra())?;
    let (name, rep) = match op {
        IndexOp::Mu => {
            expect_inputs("mu", inputs, &[2])?;
            let p = points()?;
            let value = mu(&p[0], &p[1], tol)?;
            let corank = mu_via_corank(&p[0], &p[1], tol)?;
            let mut v = index_json(
                "mu",
                alg,
                &IndexReport {
                    value: value as i64,
                    raw: value as f64,
                    residual: 0.0,
                    witnesses: vec![],
                },
                tol,
            );
            v["corank_value"] = json!(corank);
            return Ok(v);
        }
        IndexOp::Iota => {
            expect_inputs("iota", inputs, &[3])?;
            let p = points()?;
            ("iota", maslov_iota(&p[0], &p[1], &p[2], tol)?)
        }
        IndexOp::Inertia => {
            expect_inputs("inertia", inputs, &[3])?;
            let p = points()?;
            ("inertia", inertia_j(&p[0], &p[1], &p[2], tol)?)
        }
        IndexOp::Souriau => {
            expect_inputs("souriau", inputs, &[2, 3])?;
            let l = lifts()?;
            let rep = match l.get(2) {
                Some(w) => souriau_m_witness(&l[0], &l[1], w, tol)?,
                None => souriau_m(&l[0], &l[1], tol)?,
            };
            ("souriau", rep)
        }
        IndexOp::Arnold => {
            expect_inputs("arnold", inputs, &[2])?;
            let l = lifts()?;
            ("arnold", arnold_nu(&l[0], &l[1], tol)?)
        }
        IndexOp::Alm => {
            expect_inputs("alm", inputs, &[2])?;
            let l = lifts()?;
            ("alm", alm_n(&l[0], &l[1], tol)?)
        }
    };
    Ok(index_json(name, alg, &rep, tol))
}

fn rotation(word: &Path, k: u32, base: Option<&Path>, tol: &Tolerances) -> Result<Value, CliError> {
    let w = in_file(word, read_json::<JsonWord>(word)?.word())?;
    let base = match base {
        Some(p) => in_file(p, read_json::<JsonElement>(p)?.lift(tol))?,
        None => default_base_point(w.algebra()),
    };
    let est = rotation_estimate(&w, k, &base, tol)?;
    let mut v = serde_json::to_value(est).expect("estimate serializes");
    v["base"] = serde_json::to_value(JsonElement::of_lift(&base)).expect("lift serializes");
    v["tolerances"] = tolerances_json(tol);
    Ok(v)
}

fn path_index(
    op: PathOp,
    inputs: &[PathBuf],
    csv: Option<&Path>,
    tol: &Tolerances,
) -> Result<Value, CliError> {
    expect_inputs("path", inputs, &[2])?;
    let first = in_file(&inputs[0], read_json::<JsonPath>(&inputs[0])?.path(tol))?;
    let (name, idx): (&str, PathIndex) = match op {
        PathOp::Arnold => {
            let base = in_file(&inputs[1], read_json::<JsonElement>(&inputs[1])?.point(tol))?;
            ("arnold", arnold_number(&first, &base, tol)?)
        }
        PathOp::Pair => {
            let second = in_file(&inputs[1], read_json::<JsonPath>(&inputs[1])?.path(tol))?;
            ("pair", pair_path_index(&first, &second, tol)?)
        }
    };
    if let Some(path) = csv {
        let mut f = fs::File::create(path)
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        write_flow_csv(&mut f, &idx)
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    }
    Ok(json!({
        "op": name,
        "algebra": JsonAlgebra::of(first.algebra()),
        "value": idx.value,
        "crossings": idx.crossings,
        "perturbation": idx.perturbation,
        "samples": idx.flow.t.len(),
        "tolerances": tolerances_json(tol),
    }))
}

fn generate(kind: GenKind, alg: Algebra, seed: u64, len: usize) -> Result<Value, CliError> {
    let mut g = rng(seed);
    Ok(match kind {
        GenKind::Point => to(&JsonElement::of_point(&random_point(alg, &mut g))),
        GenKind::Lift => to(&JsonElement::of_lift(&random_lift(alg, &mut g))),
        GenKind::UnitaryWord => to(&JsonWord::of(&random_unitary_word(alg, len, &mut g))),
        GenKind::TubeWord => to(&JsonWord::of(&random_mixed_word(alg, len, &mut g))),
        GenKind::AffineWord => to(&JsonWord::of(&random_affine_word(alg, len, &mut g))),
        GenKind::Loop => to(&JsonPath::full_loop(&random_point(alg, &mut g), 16)),
    })
}

fn to<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("generated input serializes")
}

fn emit(out: &mut dyn Write, v: &Value) -> Result<(), CliError> {
    out.write_all(to_json_string(v).as_bytes())
        .map_err(|e| CliError::input(format!("stdout: {e}")))
}

/// Runs one subcommand, writing its report to `out`; returns the exit code.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let tol = cli.tol.tolerances()?;
    match &cli.command {
        Command::Compute { op, inputs } => emit(out, &compute(*op, inputs, &tol)?)?,
        Command::Rotation { word, k, base } => {
            emit(out, &rotation(word, *k, base.as_deref(), &tol)?)?
        }
        Command::Path { op, inputs, csv } => {
            emit(out, &path_index(*op, inputs, csv.as_deref(), &tol)?)?
        }
        Command::Gen {
            kind,
            algebra,
            param,
            seed,
            len,
            out: file,
        } => {
            let alg = Algebra::new(algebra.parse::<AlgebraKind>()?, *param)?;
            let text = to_json_string(&generate(*kind, alg, *seed, *len)?);
            match file {
                Some(p) => fs::write(p, text)
                    .map_err(|e| CliError::input(format!("{}: {e}", p.display())))?,
                None => out
                    .write_all(text.as_bytes())
                    .map_err(|e| CliError::input(format!("stdout: {e}")))?,
            }
        }
        Command::Selftest { level, seed } => {
            let level = match level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            };
            let report = selftest::run(level, *seed);
            out.write_all(report.render().as_bytes())
                .map_err(|e| CliError::input(format!("stdout: {e}")))?;
            return Ok(if report.passed() { 0 } else { 1 });
        }
    }
    Ok(0)
}
