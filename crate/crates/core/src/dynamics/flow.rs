use std::f64::consts::PI;
use std::io::Write;

use serde::Serialize;

use super::path::BoundaryPath;
use crate::error::{Error, Result};
use crate::indices::relative_angles;
use crate::shilov::{distance_to_pi, principal_angle, ShilovPoint};
use crate::tolerance::{Mode, Tolerances};

/// Largest strand displacement accepted between consecutive samples.
pub const MAX_STEP: f64 = PI / 4.0;
/// Number of interval halvings allowed when refining a path.
pub const MAX_REFINE_DEPTH: usize = 24;
/// Slope below which a strand touching pi is a tangency.
pub const TANGENCY_SLOPE: f64 = 1e-6;

/// What the eigenangles are measured against.
#[derive(Debug, Clone, Copy)]
pub enum Reference<'a> {
    Point(&'a ShilovPoint),
    Path(&'a BoundaryPath),
}

/// Continuous eigenangle strands of `w(t)`, one row per sample.
#[derive(Debug, Clone, Serialize)]
pub struct AngleFlow {
    pub t: Vec<f64>,
    pub strands: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossingRecord {
    pub t: f64,
    pub strand: usize,
    pub sign: i64,
}

/// A signed crossing count together with the data it was read from.
#[derive(Debug, Clone, Serialize)]
pub struct PathIndex {
    pub value: i64,
    pub crossings: Vec<CrossingRecord>,
    /// Phase `theta` of the perturbation `e^{i theta}` applied, 0 if none.
    pub perturbation: f64,
    #[serde(skip)]
    pub flow: AngleFlow,
}

fn permutations(r: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
    }
    let mut out = Vec::new();
    heap(r, &mut (0..r).collect(), &mut out);
    out
}

/// Continues the strands `prev` to the principal angles `next`, pairing them
/// to minimize the total displacement. Returns the continued values and the
/// largest single displacement.
fn continue_strands(prev: &[f64], next: &[f64], perms: &[Vec<usize>]) -> (Vec<f64>, f64) {
    let mut best: Option<(f64, &Vec<usize>)> = None;
    for p in perms {
        let cost: f64 = prev
            .iter()
            .zip(p)
            .map(|(a, &j)| principal_angle(next[j] - a).abs())
            .sum();
        if best.is_none_or(|(c, _)| cost < c) {
            best = Some((cost, p));
        }
    }
    let p = best.expect("at least one permutation").1;
    let mut max_step: f64 = 0.0;
    let cont = prev
        .iter()
        .zip(p)
        .map(|(a, &j)| {
            let d = principal_angle(next[j] - a);
            max_step = max_step.max(d.abs());
            a + d
        })
        .collect();
    (cont, max_step)
}

struct Sampler<'a> {
    path: &'a BoundaryPath,
    reference: Reference<'a>,
    tol: &'a Tolerances,
}

impl Sampler<'_> {
    fn refinable(&self) -> bool {
        self.path.is_refinable()
            && match self.reference {
                Reference::Point(_) => true,
                Reference::Path(p) => p.is_refinable(),
            }
    }

    fn angles(&self, t: f64) -> Result<Vec<f64>> {
        let s = self.path.at(t)?;
        match self.reference {
            Reference::Point(p) => relative_angles(&s, p, self.tol),
            Reference::Path(p) => relative_angles(&s, &p.at(t)?, self.tol),
        }
    }

    fn advance(
        &self,
        perms: &[Vec<usize>],
        t0: f64,
        prev: &[f64],
        t1: f64,
        next: Vec<f64>,
        depth: usize,
        out: &mut AngleFlow,
    ) -> Result<()> {
        let (cont, step) = continue_strands(prev, &next, perms);
        if step <= MAX_STEP {
            out.t.push(t1);
            out.strands.push(cont);
            return Ok(());
        }
        if !self.refinable() || depth >= MAX_REFINE_DEPTH {
            return Err(Error::MatchingAmbiguity {
                t: t0,
                displacement: step,
            });
        }
        let tm = 0.5 * (t0 + t1);
        let mid = self.angles(tm)?;
        self.advance(perms, t0, prev, tm, mid, depth + 1, out)?;
        let last = out.strands.last().expect("just pushed").clone();
        self.advance(perms, tm, &last, t1, next, depth + 1, out)
    }
}

fn common_grid(path: &BoundaryPath, reference: Reference<'_>) -> Result<Vec<f64>> {
    let mut grid = path.grid();
    if let Reference::Path(other) = reference {
        let g2 = other.grid();
        if g2 != grid {
            if !(path.is_refinable() && other.is_refinable()) {
                return Err(Error::InvalidInput(
                    "pair path: sampled paths must share their time grid".into(),
                ));
            }
            grid.extend(g2);
            grid.sort_by(f64::total_cmp);
            grid.dedup();
        }
    }
    Ok(grid)
}

/// Tracks the `r` eigenangles of `w(t) = relative_element(path(t), reference(t))`
/// continuously in `t`, refining the grid where strands move more than
/// [`MAX_STEP`] between samples.
pub fn eigenangle_flow(
    path: &BoundaryPath,
    reference: Reference<'_>,
    tol: &Tolerances,
) -> Result<AngleFlow> {
    let grid = common_grid(path, reference)?;
    let sampler = Sampler {
        path,
        reference,
        tol,
    };
    let r = path.algebra().rank();
    let perms = permutations(r);
    let first = sampler.angles(grid[0])?;
    let mut flow = AngleFlow {
        t: vec![grid[0]],
        strands: vec![first],
    };
    for w in grid.windows(2) {
        let next = sampler.angles(w[1])?;
        let prev = flow.strands.last().expect("nonempty").clone();
        sampler.advance(&perms, w[0], &prev, w[1], next, 0, &mut flow)?;
    }
    Ok(flow)
}

fn sheet(a: f64) -> i64 {
    ((a - PI) / (2.0 * PI)).floor() as i64
}

/// Signed passages of the strands through `pi (mod 2 pi)`.
pub fn crossings(flow: &AngleFlow) -> Vec<CrossingRecord> {
    let mut out = Vec::new();
    for i in 1..flow.t.len() {
        let (t0, t1) = (flow.t[i - 1], flow.t[i]);
        for (j, (&a, &b)) in flow.strands[i - 1].iter().zip(&flow.strands[i]).enumerate() {
            let (k0, k1) = (sheet(a), sheet(b));
            let sign = (k1 - k0).signum();
            let levels: Vec<i64> = if k1 > k0 {
                (k0 + 1..=k1).collect()
            } else {
                (k1 + 1..=k0).rev().collect()
            };
            for k in levels {
                let level = PI + 2.0 * PI * k as f64;
                let s = if b != a { (level - a) / (b - a) } else { 0.0 };
                out.push(CrossingRecord {
                    t: t0 + s.clamp(0.0, 1.0) * (t1 - t0),
                    strand: j,
                    sign,
                });
            }
        }
    }
    out
}

/// Interior samples where a strand sits at pi with negligible slope.
fn find_tangency(flow: &AngleFlow, tol: &Tolerances) -> Option<(f64, usize)> {
    let n = flow.t.len();
    for i in 1..n.saturating_sub(1) {
        for j in 0..flow.strands[i].len() {
            if distance_to_pi(flow.strands[i][j]) >= tol.gray_zone() {
                continue;
            }
            let slope =
                (flow.strands[i + 1][j] - flow.strands[i - 1][j]) / (flow.t[i + 1] - flow.t[i - 1]);
            if slope.abs() < TANGENCY_SLOPE {
                return Some((flow.t[i], j));
            }
        }
    }
    None
}

fn count(flow: AngleFlow, perturbation: f64) -> PathIndex {
    let crossings = crossings(&flow);
    PathIndex {
        value: crossings.iter().map(|c| c.sign).sum(),
        crossings,
        perturbation,
        flow,
    }
}

/// Endpoint strand angles that lie on the Maslov cycle, or in the gray zone in
/// strict mode.
fn endpoint_hits(angles: &[f64], tol: &Tolerances) -> bool {
    let limit = match tol.mode {
        Mode::Strict => tol.gray_zone(),
        Mode::Permissive => tol.transverse,
    };
    angles.iter().any(|a| distance_to_pi(*a) < limit)
}

/// Largest admissible positive phase: half the smallest distance, going
/// counterclockwise, from an endpoint angle off the cycle up to pi.
fn admissible_phase(endpoints: [&[f64]; 2], tol: &Tolerances) -> Result<f64> {
    let gaps: Vec<f64> = endpoints
        .iter()
        .flat_map(|a| a.iter())
        .filter(|a| distance_to_pi(**a) >= tol.gray_zone())
        .map(|a| (PI - a).rem_euclid(2.0 * PI))
        .collect();
    let theta = gaps.iter().fold(PI, |m, g| m.min(*g)) * 0.5;
    if theta < 10.0 * tol.gray_zone() {
        return Err(Error::NoAdmissiblePerturbation(format!(
            "largest admissible phase {theta:.3e} is below the gray zone"
        )));
    }
    Ok(theta)
}

fn endpoint_angles(flow: &AngleFlow) -> [&[f64]; 2] {
    [&flow.strands[0], &flow.strands[flow.strands.len() - 1]]
}

/// Signed number of crossings of `path` through the Maslov cycle of `base`.
///
/// Strict mode refuses endpoints on the cycle and tangential crossings;
/// permissive mode rotates the path by a small positive phase instead.
pub fn arnold_number(
    path: &BoundaryPath,
    base: &ShilovPoint,
    tol: &Tolerances,
) -> Result<PathIndex> {
    let flow = eigenangle_flow(path, Reference::Point(base), tol)?;
    let ends = endpoint_angles(&flow);
    let on_cycle = endpoint_hits(ends[0], tol) || endpoint_hits(ends[1], tol);
    let tangency = find_tangency(&flow, tol);
    if on_cycle || tangency.is_some() {
        if tol.mode == Mode::Strict {
            if on_cycle {
                let t = if endpoint_hits(ends[0], tol) {
                    0.0
                } else {
                    1.0
                };
                return Err(Error::EndpointOnCycle { t });
            }
            let (t, strand) = tangency.expect("tangency found");
            return Err(Error::Tangency { t, strand });
        }
        let theta = admissible_phase(ends, tol)?.min(1e-3);
        let moved = eigenangle_flow(&path.rotated(theta), Reference::Point(base), tol)?;
        return Ok(count(moved, theta));
    }
    Ok(count(flow, 0.0))
}

/// Maslov index of a pair of paths with the perturbation phase fixed to
/// `theta`: crossings of the strands of `relative_element(e^{i theta} p2(t), p1(t))`.
pub fn pair_path_index_with_phase(
    p1: &BoundaryPath,
    p2: &BoundaryPath,
    theta: f64,
    tol: &Tolerances,
) -> Result<PathIndex> {
    p1.algebra().check_same(&p2.algebra())?;
    let moved = if theta == 0.0 {
        p2.clone()
    } else {
        p2.rotated(theta)
    };
    let flow = eigenangle_flow(&moved, Reference::Path(p1), tol)?;
    let ends = endpoint_angles(&flow);
    for (k, a) in ends.iter().enumerate() {
        if endpoint_hits(a, tol) {
            return Err(Error::EndpointOnCycle { t: k as f64 });
        }
    }
    if let Some((t, strand)) = find_tangency(&flow, tol) {
        return Err(Error::Tangency { t, strand });
    }
    Ok(count(flow, theta))
}

/// Maslov index of a pair of paths. Pairs with non-transverse endpoints are
/// replaced by `(p1, e^{i theta} p2)` with `theta > 0` half the largest
/// admissible phase.
pub fn pair_path_index(
    p1: &BoundaryPath,
    p2: &BoundaryPath,
    tol: &Tolerances,
) -> Result<PathIndex> {
    let theta = pair_path_phase(p1, p2, tol)?;
    match pair_path_index_with_phase(p1, p2, theta, tol) {
        Err(Error::Tangency { .. }) if tol.mode == Mode::Permissive => {
            let extra = if theta == 0.0 {
                admissible_phase_for(p1, p2, tol)?.min(1e-3)
            } else {
                0.5 * theta
            };
            pair_path_index_with_phase(p1, p2, extra, tol)
        }
        other => other,
    }
}

fn admissible_phase_for(p1: &BoundaryPath, p2: &BoundaryPath, tol: &Tolerances) -> Result<f64> {
    let a0 = relative_angles(p2.start(), p1.start(), tol)?;
    let a1 = relative_angles(p2.end(), p1.end(), tol)?;
    admissible_phase([&a0, &a1], tol)
}

/// The perturbation phase used by [`pair_path_index`]: 0 for proper pairs.
pub fn pair_path_phase(p1: &BoundaryPath, p2: &BoundaryPath, tol: &Tolerances) -> Result<f64> {
    p1.algebra().check_same(&p2.algebra())?;
    let a0 = relative_angles(p2.start(), p1.start(), tol)?;
    let a1 = relative_angles(p2.end(), p1.end(), tol)?;
    let near = |a: &[f64]| a.iter().any(|x| distance_to_pi(*x) < tol.gray_zone());
    if near(&a0) || near(&a1) {
        admissible_phase([&a0, &a1], tol)
    } else {
        Ok(0.0)
    }
}

/// Writes one row per sample and strand: `t,strand_id,angle,crossing_flag,sign`.
/// A row is flagged when its strand crossed pi since the previous sample.
pub fn write_flow_csv<W: Write>(out: &mut W, index: &PathIndex) -> std::io::Result<()> {
    writeln!(out, "t,strand_id,angle,crossing_flag,sign")?;
    let flow = &index.flow;
    for (i, (t, row)) in flow.t.iter().zip(&flow.strands).enumerate() {
        for (j, a) in row.iter().enumerate() {
            let sign: i64 = if i == 0 {
                0
            } else {
                index
                    .crossings
                    .iter()
                    .filter(|c| c.strand == j && c.t > flow.t[i - 1] && c.t <= *t)
                    .map(|c| c.sign)
                    .sum()
            };
            let flag = i > 0 && sheet(flow.strands[i - 1][j]) != sheet(*a);
            writeln!(out, "{t:.17e},{j},{a:.17e},{},{sign}", u8::from(flag))?;
        }
    }
    Ok(())
}
