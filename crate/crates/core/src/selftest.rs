//! Randomized acceptance checks over the desk-scale algebras: sym-r up to
//! m = 3, herm-c up to m = 2 and the spin factors with q = 3 and q = 5.
//!
//! Every case draws from its own ChaCha stream, so reports depend only on the
//! level and the seed, never on the thread count.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{
    arnold_number, circle_distance, default_base_point, pair_path_index, quasimorphism_c,
    rotation_estimate, BoundaryPath,
};
use crate::error::{Error, Result};
use crate::indices::{
    alm_n, inertia_j, iota_shared_frame, iota_signature, m_shared_frame, maslov_iota, mu,
    mu_via_corank, relative_angles, souriau_m, souriau_m_witness,
};
use crate::jordan::{Algebra, ElementJ};
use crate::random::{
    pair_with_coincidences, random_affine_word, random_angles, random_element, random_frame,
    random_mixed_word, random_point, random_unitary_word, rng, Rand,
};
use crate::shilov::{
    distance_to_pi, ElementC, Generator, GroupWord, LiftedPoint, ShilovPoint, WordMode,
};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// About a tenth of the full sample counts.
    Quick,
    Full,
}

impl Level {
    fn count(self, full: usize) -> usize {
        match self {
            Level::Full => full,
            Level::Quick => (full / 10).max(ALGEBRAS.len()),
        }
    }
}

pub const CRITERIA: [(u8, &str); 13] = [
    (1, "orbit values"),
    (2, "leray formula"),
    (3, "maslov cocycle"),
    (4, "souriau integrality and antisymmetry"),
    (5, "witness independence"),
    (6, "group invariance"),
    (7, "shared-frame coordinates"),
    (8, "transversality index via corank"),
    (9, "arnold coordinates and primitive"),
    (10, "rotation numbers"),
    (11, "quasimorphism bound"),
    (12, "path indices"),
    (13, "jordan kernel health"),
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub checks: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn line(&self) -> String {
        let mut s = format!(
            "[{}] {:>2} {}: {} checks, {} failures",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.checks,
            self.failures
        );
        if let Some(f) = &self.first_failure {
            let _ = write!(s, " (first: {f})");
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelfTestReport {
    pub level: Level,
    pub seed: u64,
    pub criteria: Vec<CriterionReport>,
}

impl SelfTestReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(CriterionReport::passed)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.criteria {
            s.push_str(&c.line());
            s.push('\n');
        }
        let passed = self.criteria.iter().filter(|c| c.passed()).count();
        let _ = writeln!(
            s,
            "selftest level={} seed={}: {passed}/{} criteria passed",
            match self.level {
                Level::Quick => "quick",
                Level::Full => "full",
            },
            self.seed,
            self.criteria.len()
        );
        s
    }
}

const ALGEBRAS: [(crate::jordan::AlgebraKind, usize); 7] = {
    use crate::jordan::AlgebraKind::*;
    [
        (SymR, 1),
        (SymR, 2),
        (SymR, 3),
        (HermC, 1),
        (HermC, 2),
        (Spin, 3),
        (Spin, 5),
    ]
};

pub fn algebras() -> Vec<Algebra> {
    ALGEBRAS
        .iter()
        .map(|&(k, p)| Algebra::new(k, p).expect("supported algebra"))
        .collect()
}

pub fn run(level: Level, seed: u64) -> SelfTestReport {
    SelfTestReport {
        level,
        seed,
        criteria: CRITERIA
            .iter()
            .map(|&(id, _)| run_criterion(id, level, seed).expect("known criterion"))
            .collect(),
    }
}

pub fn run_criterion(id: u8, level: Level, seed: u64) -> Result<CriterionReport> {
    let name = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map(|(_, n)| *n)
        .ok_or_else(|| Error::InvalidInput(format!("unknown criterion {id}")))?;
    let tol = Tolerances::default();
    let mut out = Tally::default();
    let s = Suite { id, seed, tol };
    match id {
        1 => s.orbit_values(&mut out),
        2 => s.leray(level, &mut out),
        3 => s.cocycle(level, &mut out),
        4 => s.souriau_pairs(level, &mut out),
        5 => s.witnesses(level, &mut out),
        6 => s.invariance(level, &mut out),
        7 => s.shared_frame(level, &mut out),
        8 => s.corank(level, &mut out),
        9 => s.arnold(level, &mut out),
        10 => s.rotation(level, &mut out),
        11 => s.quasimorphism(level, &mut out),
        12 => s.paths(level, &mut out),
        _ => s.kernel(level, &mut out),
    }
    Ok(CriterionReport {
        id,
        name,
        checks: out.checks,
        failures: out.failures,
        first_failure: out.first,
    })
}

type Case = std::result::Result<usize, String>;

fn ok<T>(r: Result<T>, what: &str) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn expect_eq(what: &str, got: i64, want: i64) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, expected {want}"))
    }
}

fn expect(cond: bool, what: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: usize,
    first: Option<String>,
}

struct Suite {
    id: u8,
    seed: u64,
    tol: Tolerances,
}

impl Suite {
    /// Runs `count` cases in parallel; case `i` uses the algebra
    /// `algebras()[i % 7]` and its own random stream.
    fn cases<F>(&self, part: u64, count: usize, out: &mut Tally, f: F)
    where
        F: Fn(usize, Algebra, &mut Rand) -> Case + Sync,
    {
        let algs = algebras();
        let results: Vec<(usize, Algebra, Case)> = (0..count)
            .into_par_iter()
            .map(|i| {
                let mut g = rng(self.seed);
                g.set_stream(((self.id as u64) << 48) | (part << 32) | i as u64);
                let alg = algs[i % algs.len()];
                (i, alg, f(i, alg, &mut g))
            })
            .collect();
        for (i, alg, r) in results {
            match r {
                Ok(n) => out.checks += n,
                Err(msg) => {
                    out.checks += 1;
                    out.failures += 1;
                    if out.first.is_none() {
                        out.first = Some(format!("part {part} case {i} in {alg}: {msg}"));
                    }
                }
            }
        }
    }

    fn orbit_values(&self, out: &mut Tally) {
        let tol = self.tol;
        self.cases(0, ALGEBRAS.len(), out, |_, alg, _| {
            let e = ShilovPoint::unit(alg);
            let r = alg.rank() as i64;
            let mut n = 0;
            for k in 0..=alg.rank() {
                let eps = ok(ElementJ::epq(alg, k, alg.rank() - k), "epsilon")?;
                let s3 = ok(
                    ShilovPoint::new(
                        ElementC::from_real(&eps).scale(Complex64::new(0.0, -1.0)),
                        tol.shilov,
                    ),
                    "-i epsilon",
                )?;
                let iota = ok(maslov_iota(&e, &e.neg(), &s3, &tol), "iota")?;
                expect(iota.residual < 1e-6, || {
                    format!("k = {k}: residual {:.3e}", iota.residual)
                })?;
                expect_eq(&format!("iota at k = {k}"), iota.value, 2 * k as i64 - r)?;
                let sig = ok(iota_signature(&e, &e.neg(), &s3, &tol), "signature")?;
                expect_eq(&format!("signature iota at k = {k}"), sig, 2 * k as i64 - r)?;
                n += 2;
            }
            Ok(n)
        });
    }

    fn leray(&self, level: Level, out: &mut Tally) {
        let tol = self.tol;
        let count = level.count(200);
        self.cases(0, count, out, |i, alg, g| {
            let pts = mixed_triple(alg, g, (i / ALGEBRAS.len()) % 4);
            let lifts: Vec<LiftedPoint> = pts
                .iter()
                .map(|p| LiftedPoint::lift(p.clone(), g.random_range(-2..=2)))
                .collect();
            let mut sum = 0;
            for (a, b) in [(0, 1), (1, 2), (2, 0)] {
                sum += ok(souriau_m(&lifts[a], &lifts[b], &tol), "m")?.value;
            }
            let iota = ok(maslov_iota(&pts[0], &pts[1], &pts[2], &tol), "iota")?.value;
            expect_eq("m12 + m23 + m31 vs iota", sum, iota)?;
            let via = iota_from_signatures(&pts[0], &pts[1], &pts[2], g, &tol)?;
            expect_eq("iota vs signature cocycle", iota, via)?;
            Ok(2)
        });
    }

    fn cocycle(&self, level: Level, out: &mut Tally) {
        let tol = self.tol;
        let count = level.count(200);
        // Every other case carries forced coincidences.
        self.cases(0, count, out, |i, alg, g| {
            let forced = i % 2 == 0;
            let pts: Vec<ShilovPoint> = if forced {
                let (a, b) = pair_with_coincidences(alg, g.random_range(1..=alg.rank()), g);
                let c = if g.random_bool(0.3) {
                    a.clone()
                } else {
                    random_point(alg, g)
                };
                let (d, _) = pair_with_coincidences(alg, 1, g);
                let d = if g.random_bool(0.5) { b.clone() } else { d };
                vec![a, b, c, d]
            } else {
                (0..4).map(|_| random_point(alg, g)).collect()
            };
            let iota = |i: usize, j: usize, k: usize| -> std::result::Result<i64, String> {
                Ok(ok(maslov_iota(&pts[i], &pts[j], &pts[k], &tol), "iota")?.value)
            };
            let delta = iota(1, 2, 3)? - iota(0, 2, 3)? + iota(0, 1, 3)? - iota(0, 1, 2)?;
            expect_eq("coboundary of iota", delta, 0)?;
            Ok(1)
        });
    }

    fn souriau_pairs(&self, level: Level, out: &mut Tally) {
        let tol = self.tol;
        self.cases(0, level.count(500), out, |_, alg, g| {
            let (s, t) = random_lifted_pair(alg, g);
            let m = ok(souriau_m(&s, &t, &tol), "m(s, t)")?;
            expect(m.residual < 1e-6, || format!("residual {:.3e}", m.residual))?;
            let back = ok(souriau_m(&t, &s, &tol), "m(t, s)")?;
            expect_eq("m(t, s)", back.value, -m.value)?;
            let shifted = ok(souriau_m(&s, &t.t_shift(1), &tol), "m(s, T t)")?;
            expect_eq("m(s, T t)", shifted.value, m.value + 2)?;
            let shifted = ok(souriau_m(&s.t_shift(1), &t, &tol), "m(T s, t)")?;
            expect_eq("m(T s, t)", shifted.value, m.value - 2)?;
            Ok(4)
        });
    }

    fn witnesses(&self, level: Level, out: &mut Tally) {
        let tol = self.tol;
        self.cases(0, level.count(100), out, |_, alg, g| {
            let (s, t) = random_lifted_pair(alg, g);
            let m = ok(souriau_m(&s, &t, &tol), "m")?.value;
            for w in 0..10 {
                let p = transverse_point(alg, &[s.point(), t.point()], g, &tol)?;
                let lifted = LiftedPoint::lift(p, g.random_range(-3..=3));
                let v = ok(souriau_m_witness(&s, &t, &lifted, &tol), "witness form")?.value;
                expect_eq(&format!("witness {w}"), v, m)?;
            }
            Ok(10)
        });
    }

    fn invariance(&self, level: Level, out: &mut Tally) {
        let tol = self.tol;
        let count = level.count(50) * ALGEBRAS.len();
        self.cases(0, count, out, |_, alg, g| {
            let word = if g.random_bool(0.5) {
                random_unitary_word(alg, 3, g)
            } else {
                random_mixed_word(alg, 3, g)
            };
            let mut last = String::new();
            for _ in 0..20 {
                let (s, t) = random_lifted_pair(alg, g);
                let u = random_point(alg, g);
                let moved = (|| -> Result<_> {
                    Ok((
                        word.act_lift(&s, tol.shilov)?,
                        word.act_lift(&t, tol.shilov)?,
                        word.apply_point(&u, tol.shilov)?,
                    ))
                })();
                let (gs, gt, gu) = match moved {
                    Ok(v) => v,
                    Err(e) if e.class() == crate::error::ErrorClass::Domain => {
                        last = e.to_string();
                        continue;
                    }
                    Err(e) => return Err(format!("{} acting: {e}", word_name(&word))),
                };
                let m = ok(souriau_m(&s, &t, &tol), "m")?.value;
                let gm = ok(souriau_m(&gs, &gt, &tol), "m after g")?.value;
                expect_eq("m(g s, g t)", gm, m)?;
                let (a, b) = (s.point(), t.point());
                let iota = ok(maslov_iota(a, b, &u, &tol), "iota")?.value;
                let giota = ok(
                    maslov_iota(gs.point(), gt.point(), &gu, &tol),
                    "iota after g",
                )?
                .value;
                expect_eq("iota(g a, g b, g c)", giota, iota)?;
                let mu0 = ok(mu(a, b, &tol), "mu")? as i64;
                let gmu = ok(mu(gs.point(), gt.point(), &tol), "mu after g")? as i64;
                expect_eq("mu(g a, g b)", gmu, mu0)?;
                return Ok(3);
            }
            Err(format!("no points in the domain of the word: {last}"))
        });
    }

    fn shared_frame(&self, level: Level, out: &mut Tally) {
        let tol = self.tol;
        self.cases(0, level.count(200), out, |_, alg, g| {
            let r = alg.rank();
            let frame = random_frame(alg, g);
            let a = random_angles(r, g);
            let mut b = random_angles(r, g);
            let mut c = random_angles(r, g);
            for j in 0..r {
                match g.random_range(0..4) {
                    0 => b[j] = a[j],
                    1 => c[j] = a[j],
                    2 => c[j] = b[j],
                    _ => {}
                }
            }
            let lift =
                |angles: &[f64], k: i64| -> std::result::Result<(LiftedPoint, f64), String> {
                    let theta = (angles.iter().sum::<f64>() + 2.0 * PI * k as f64) / r as f64;
                    let p = ShilovPoint::from_frame(&frame, angles);
                    Ok((ok(LiftedPoint::new(p, theta, 1e-9), "lift")?, theta))
                };
            let (la, ta) = lift(&a, g.random_range(-2..=2))?;
            let (lb, tb) = lift(&b, g.random_range(-2..=2))?;
            let (lc, _) = lift(&c, 0)?;
            let m = ok(souriau_m(&la, &lb, &tol), "m")?.value;
            expect_eq("m vs coordinates", m, m_shared_frame(&a, ta, &b, tb))?;
            let iota = ok(
                maslov_iota(la.point(), lb.point(), lc.point(), &tol),
                "iota",
            )?
            .value;
            expect_eq("iota vs coordinates", iota, iota_shared_frame(&a, &b, &c))?;
            Ok(2)
        });
    }

    fn corank(&self, level: Level, out: &mut Tally) {
        let tol = self.tol;
        self.cases(0, level.count(200), out, |_, alg, g| {
            let ell = g.random_range(0..=alg.rank());
            let (s, t) = pair_with_coincidences(alg, ell, g);
            let by_angles = ok(mu(&s, &t, &tol), "mu")?;
            expect_eq("mu from angles", by_angles as i64, ell as i64)?;
            let by_corank = ok(mu_via_corank(&s, &t, &tol), "mu via corank")?;
            expect_eq("mu via corank", by_corank as i64, by_angles as i64)?;
            Ok(2)
        });
    }

    fn arnold(&self, level: Level, out: &mut Tally) {
        let tol = self.tol;
        // sigma_1 = (-e, -pi), sigma_2 = (-(c_1 + .. + c_l) + sum_{j > l} e^{i phi_j} c_j, phi)
        // with r phi = -l pi + sum phi_j + 2 k pi: nu = k - l.
        self.cases(0, ALGEBRAS.len() * 2, out, |_, alg, g| {
            let r = alg.rank();
            let frame = random_frame(alg, g);
            let s1 = ok(
                LiftedPoint::new(ShilovPoint::unit(alg).neg(), -PI, 1e-12),
                "-e",
            )?;
            let mut n = 0;
            for l in 0..=r {
                for k in -3i64..=3 {
                    let mut phis = random_angles(r, g);
                    for p in phis.iter_mut().take(l) {
                        *p = PI;
                    }
                    for p in phis.iter_mut().skip(l) {
                        *p = p.clamp(-PI + 0.05, PI - 0.05);
                    }
                    let sum: f64 = phis[l..].iter().sum();
                    let phi = (-(l as f64) * PI + sum + 2.0 * k as f64 * PI) / r as f64;
                    let s2 = ok(
                        LiftedPoint::new(ShilovPoint::from_frame(&frame, &phis), phi, 1e-9),
                        "lift",
                    )?;
                    let nu = ok(crate::indices::arnold_nu(&s1, &s2, &tol), "nu")?.value;
                    let m = ok(mu(s1.point(), s2.point(), &tol), "mu")? as i64;
                    expect_eq(&format!("mu at l = {l}"), m, l as i64)?;
                    expect_eq(&format!("nu at l = {l}, k = {k}"), nu, k - m)?;
                    n += 2;
                }
            }
            Ok(n)
        });
        self.cases(1, level.count(200), out, |_, alg, g| {
            let flavor = g.random_range(0..4);
            let pts = mixed_triple(alg, g, flavor);
            let l: Vec<LiftedPoint> = pts
                .iter()
                .map(|p| LiftedPoint::lift(p.clone(), g.random_range(-2..=2)))
                .collect();
            let n = |a: usize, b: usize| -> std::result::Result<i64, String> {
                Ok(ok(alm_n(&l[a], &l[b], &tol), "n")?.value)
            };
            let j = ok(inertia_j(&pts[0], &pts[1], &pts[2], &tol), "inertia")?.value;
            expect_eq("n12 - n13 + n23", n(0, 1)? - n(0, 2)? + n(1, 2)?, j)?;
            Ok(1)
        });
    }

    fn rotation(&self, level: Level, out: &mut Tally) {
        let tol = self.tol;
        const K: u32 = 32;
        self.cases(0, level.count(20), out, |_, alg, g| {
            let word = random_unitary_word(alg, 3, g);
            let est = ok(
                rotation_estimate(&word, K, &default_base_point(alg), &tol),
                "rotation",
            )?;
            let chi = ok(word.chi(), "chi")?;
            let dist = (Complex64::from_polar(1.0, 2.0 * PI * est.rho_mod1) - chi).norm();
            let bound = 2.0 * PI * alg.rank() as f64 / (2.0 * K as f64);
            expect(dist < bound, || {
                format!(
                    "|exp(2 pi i rho) - chi| = {dist:.3e} exceeds {bound:.3e} (rho {})",
                    est.rho_mod1
                )
            })?;
            Ok(1)
        });
        self.cases(1, level.count(10), out, |_, alg, g| {
            let word = random_affine_word(alg, 3, g);
            let est = ok(
                rotation_estimate(&word, K, &default_base_point(alg), &tol),
                "rotation",
            )?;
            let d = circle_distance(est.rho_mod1, 0.0);
            expect(d <= est.error_bound, || {
                format!(
                    "rho = {} is {d:.3e} from 0, bound {:.3e}",
                    est.rho_mod1, est.error_bound
                )
            })?;
            Ok(1)
        });
    }

    fn quasimorphism(&self, level: Level, out: &mut Tally) {
        let tol = self.tol;
        self.cases(0, level.count(100), out, |_, alg, g| {
            let draw = |g: &mut Rand| {
                if g.random_bool(0.5) {
                    random_unitary_word(alg, 2, g)
                } else {
                    random_mixed_word(alg, 2, g)
                }
            };
            let (a, b) = (draw(g), draw(g));
            let ab = ok(a.compose(&b), "compose")?;
            let mut last = String::new();
            for _ in 0..20 {
                let base = LiftedPoint::lift(random_point(alg, g), 0);
                let c = |w: &GroupWord| quasimorphism_c(w, &base, &tol);
                match (c(&ab), c(&a), c(&b)) {
                    (Ok(x), Ok(y), Ok(z)) => {
                        let defect = x - y - z;
                        expect(defect.abs() <= alg.rank() as i64, || {
                            format!("defect {defect}")
                        })?;
                        return Ok(1);
                    }
                    (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => {
                        if e.class() != crate::error::ErrorClass::Domain {
                            return Err(format!("c: {e}"));
                        }
                        last = e.to_string();
                    }
                }
            }
            Err(format!("no base point in the domain of the words: {last}"))
        });
    }

    fn paths(&self, level: Level, out: &mut Tally) {
        let tol = self.tol;
        self.cases(0, ALGEBRAS.len() * 2, out, |_, alg, g| {
            let base = random_point(alg, g);
            let sigma = random_point(alg, g);
            let r = alg.rank() as i64;
            let mut n = 0;
            for (turns, want) in [(1.0, r), (-1.0, -r)] {
                let s = sigma.clone();
                let p = ok(
                    BoundaryPath::from_fn(move |t| Ok(s.rotate(2.0 * PI * turns * t)), 16),
                    "path",
                )?;
                let v = ok(arnold_number(&p, &base, &tol), "arnold number")?.value;
                expect_eq(&format!("loop with {turns} turns"), v, want)?;
                n += 1;
            }
            Ok(n)
        });
        self.cases(1, level.count(50), out, |_, alg, g| {
            let (s, t) = (random_point(alg, g), random_point(alg, g));
            if ok(mu(&s, &t, &tol), "mu")? != 0 {
                return Err("endpoints not transverse".into());
            }
            let v = random_element(alg, g).scale(1.5);
            let speed = g.random_range(-2.0 * PI..2.0 * PI);
            let p1 = moving_path(&s, &v, speed)?;
            let p2 = moving_path(&t, &v, speed)?;
            let idx = ok(pair_path_index(&p1, &p2, &tol), "pair index")?.value;
            expect_eq("transverse pair index", idx, 0)?;
            Ok(1)
        });
        self.cases(2, level.count(50), out, |_, alg, g| {
            let base = random_point(alg, g);
            let v = random_element(alg, g).scale(1.5);
            let speed = g.random_range(-3.0 * PI..3.0 * PI);
            let p = moving_path(&random_point(alg, g), &v, speed)?;
            let whole = ok(arnold_number(&p, &base, &tol), "arnold number")?.value;
            let mut last = String::new();
            for _ in 0..10 {
                let a = g.random_range(0.1..0.9);
                let (p1, p2) = ok(p.split_at(a), "split")?;
                match (
                    arnold_number(&p1, &base, &tol),
                    arnold_number(&p2, &base, &tol),
                ) {
                    (Ok(x), Ok(y)) => {
                        expect_eq(&format!("split at {a}"), x.value + y.value, whole)?;
                        return Ok(1);
                    }
                    (Err(e), _) | (_, Err(e)) => last = e.to_string(),
                }
            }
            Err(format!("no admissible split point: {last}"))
        });
    }

    fn kernel(&self, level: Level, out: &mut Tally) {
        let tol = self.tol;
        self.cases(0, level.count(100) * ALGEBRAS.len(), out, |_, alg, g| {
            let x = random_element(alg, g);
            let y = random_element(alg, g);
            let scale = x.norm().max(1.0);
            let rel = |what: &str, err: f64, size: f64| {
                expect(err <= tol.spec * size.max(1.0), || {
                    format!("{what}: error {err:.3e}")
                })
            };
            let x2 = x.square();
            let lhs = ok(x.jmul(&ok(x2.jmul(&y), "product")?), "product")?;
            let rhs = ok(x2.jmul(&ok(x.jmul(&y), "product")?), "product")?;
            rel(
                "jordan identity",
                lhs.distance(&rhs),
                scale.powi(3) * y.norm(),
            )?;

            let sp = ok(x.spectral(), "spectral")?;
            rel("spectral round trip", sp.reconstruct().distance(&x), scale)?;
            let e = ElementJ::unit(alg);
            let mut sum = ElementJ::zero(alg);
            for (i, ci) in sp.frame.iter().enumerate() {
                sum = &sum + ci;
                for (j, cj) in sp.frame.iter().enumerate() {
                    let prod = ok(ci.jmul(cj), "frame product")?;
                    let want = if i == j {
                        ci.clone()
                    } else {
                        ElementJ::zero(alg)
                    };
                    rel("frame orthogonality", prod.distance(&want), 1.0)?;
                }
            }
            rel("frame completeness", sum.distance(&e), 1.0)?;

            let r = alg.rank() as i32;
            let py = ok(x.quad_rep_apply(&y), "P(x) y")?;
            let want = x.det_real().powi(2) * y.det_real();
            rel(
                "det(P(x) y)",
                (py.det_real() - want).abs(),
                scale.powi(2 * r) * y.norm().max(1.0).powi(r),
            )?;
            Ok(5)
        });
    }
}

fn word_name(w: &GroupWord) -> String {
    let names: Vec<&str> = w.generators().iter().map(Generator::name).collect();
    format!("[{}]", names.join(", "))
}

fn random_lifted_pair(alg: Algebra, g: &mut Rand) -> (LiftedPoint, LiftedPoint) {
    let (s, t) = if g.random_bool(0.4) {
        pair_with_coincidences(alg, g.random_range(1..=alg.rank()), g)
    } else {
        (random_point(alg, g), random_point(alg, g))
    };
    (
        LiftedPoint::lift(s, g.random_range(-2..=2)),
        LiftedPoint::lift(t, g.random_range(-2..=2)),
    )
}

/// Triples of four flavors: generic, one coincident pair, a repeated point,
/// and three points on one frame with shared angles.
fn mixed_triple(alg: Algebra, g: &mut Rand, flavor: usize) -> Vec<ShilovPoint> {
    match flavor {
        0 => (0..3).map(|_| random_point(alg, g)).collect(),
        1 => {
            let (a, b) = pair_with_coincidences(alg, g.random_range(1..=alg.rank()), g);
            vec![a, b, random_point(alg, g)]
        }
        2 => {
            let a = random_point(alg, g);
            vec![a.clone(), random_point(alg, g), a]
        }
        _ => {
            let r = alg.rank();
            let frame = random_frame(alg, g);
            let a = random_angles(r, g);
            let mut b = random_angles(r, g);
            let mut c = random_angles(r, g);
            b[0] = a[0];
            c[r - 1] = b[r - 1];
            [a, b, c]
                .iter()
                .map(|x| ShilovPoint::from_frame(&frame, x))
                .collect()
        }
    }
}

/// A random point whose relative angles with each of `others` stay at least
/// `1e-3` away from pi.
fn transverse_point(
    alg: Algebra,
    others: &[&ShilovPoint],
    g: &mut Rand,
    tol: &Tolerances,
) -> std::result::Result<ShilovPoint, String> {
    'draw: for _ in 0..200 {
        let p = random_point(alg, g);
        for o in others {
            let angles = ok(relative_angles(&p, o, tol), "relative angles")?;
            if angles.iter().any(|a| distance_to_pi(*a) < 1e-3) {
                continue 'draw;
            }
        }
        return Ok(p);
    }
    Err("no transverse point found".into())
}

/// `iota(s1, s2, s3) = iota(s2, s3, w) - iota(s1, s3, w) + iota(s1, s2, w)`
/// with every term read from a signature against a point `w` transverse to
/// all three.
fn iota_from_signatures(
    s1: &ShilovPoint,
    s2: &ShilovPoint,
    s3: &ShilovPoint,
    g: &mut Rand,
    tol: &Tolerances,
) -> std::result::Result<i64, String> {
    let w = transverse_point(s1.algebra(), &[s1, s2, s3], g, tol)?;
    let sig = |a: &ShilovPoint, b: &ShilovPoint| ok(iota_signature(a, b, &w, tol), "signature");
    Ok(sig(s2, s3)? - sig(s1, s3)? + sig(s1, s2)?)
}

/// `t -> exp(i t L(v)) e^{i speed t} sigma`.
fn moving_path(
    sigma: &ShilovPoint,
    v: &ElementJ,
    speed: f64,
) -> std::result::Result<BoundaryPath, String> {
    let (sigma, v) = (sigma.clone(), v.clone());
    let alg = sigma.algebra();
    ok(
        BoundaryPath::from_fn(
            move |t| {
                let w = GroupWord::new(
                    alg,
                    WordMode::Unitary,
                    vec![Generator::ExpIL(v.scale(t))],
                    None,
                )?;
                w.apply_point(&sigma.rotate(speed * t), 1e-7)
            },
            24,
        ),
        "path",
    )
}
