use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::jordan::Algebra;
use crate::shilov::ShilovPoint;

pub type PathSource = Arc<dyn Fn(f64) -> Result<ShilovPoint> + Send + Sync>;

/// A path `t -> sigma(t)` in `S`, `t in [0, 1]`, given by samples and
/// optionally by a function that can be evaluated between them.
#[derive(Clone)]
pub struct BoundaryPath {
    samples: Vec<(f64, ShilovPoint)>,
    source: Option<PathSource>,
}

impl fmt::Debug for BoundaryPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundaryPath")
            .field("samples", &self.samples.len())
            .field("refinable", &self.source.is_some())
            .finish()
    }
}

fn uniform_grid(intervals: usize) -> Vec<f64> {
    (0..=intervals)
        .map(|i| i as f64 / intervals as f64)
        .collect()
}

impl BoundaryPath {
    pub fn from_samples(samples: Vec<(f64, ShilovPoint)>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidInput(
                "path: need at least two samples".into(),
            ));
        }
        if samples[0].0 != 0.0 || samples[samples.len() - 1].0 != 1.0 {
            return Err(Error::InvalidInput(
                "path: samples must start at t = 0 and end at t = 1".into(),
            ));
        }
        if samples.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return Err(Error::InvalidInput(
                "path: t must be strictly increasing".into(),
            ));
        }
        let alg = samples[0].1.algebra();
        for (_, s) in &samples {
            alg.check_same(&s.algebra())?;
        }
        Ok(BoundaryPath {
            samples,
            source: None,
        })
    }

    /// Samples `f` on `intervals` equal steps and keeps `f` for refinement.
    pub fn from_fn(
        f: impl Fn(f64) -> Result<ShilovPoint> + Send + Sync + 'static,
        intervals: usize,
    ) -> Result<Self> {
        let source: PathSource = Arc::new(f);
        Self::from_source(source, &uniform_grid(intervals.max(1)))
    }

    fn from_source(source: PathSource, grid: &[f64]) -> Result<Self> {
        let samples = grid
            .iter()
            .map(|&t| Ok((t, source(t)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut p = Self::from_samples(samples)?;
        p.source = Some(source);
        Ok(p)
    }

    pub fn constant(point: ShilovPoint) -> Self {
        let p = point.clone();
        BoundaryPath {
            samples: vec![(0.0, point.clone()), (1.0, point)],
            source: Some(Arc::new(move |_| Ok(p.clone()))),
        }
    }

    pub fn samples(&self) -> &[(f64, ShilovPoint)] {
        &self.samples
    }

    pub fn algebra(&self) -> Algebra {
        self.samples[0].1.algebra()
    }

    pub fn grid(&self) -> Vec<f64> {
        self.samples.iter().map(|(t, _)| *t).collect()
    }

    pub fn is_refinable(&self) -> bool {
        self.source.is_some()
    }

    pub fn start(&self) -> &ShilovPoint {
        &self.samples[0].1
    }

    pub fn end(&self) -> &ShilovPoint {
        &self.samples[self.samples.len() - 1].1
    }

    /// `sigma(t)`: a stored sample, or the source evaluated at `t`.
    pub fn at(&self, t: f64) -> Result<ShilovPoint> {
        if let Ok(i) = self.samples.binary_search_by(|(s, _)| s.total_cmp(&t)) {
            return Ok(self.samples[i].1.clone());
        }
        match &self.source {
            Some(f) => f(t),
            None => Err(Error::InvalidInput(format!("path: no sample at t = {t}"))),
        }
    }

    /// The same path sampled on `grid` (which must contain 0 and 1); sample-only
    /// paths can only be restricted to a subset of their own grid.
    pub fn resample(&self, grid: &[f64]) -> Result<Self> {
        match &self.source {
            Some(f) => Self::from_source(f.clone(), grid),
            None => Self::from_samples(
                grid.iter()
                    .map(|&t| Ok((t, self.at(t)?)))
                    .collect::<Result<Vec<_>>>()?,
            ),
        }
    }

    /// Doubles the sample density of a refinable path.
    pub fn refined(&self) -> Result<Self> {
        let mut grid = Vec::with_capacity(2 * self.samples.len());
        for w in self.samples.windows(2) {
            grid.push(w[0].0);
            grid.push(0.5 * (w[0].0 + w[1].0));
        }
        grid.push(1.0);
        self.resample(&grid)
    }

    /// `e^{i phase} sigma(t)`.
    pub fn rotated(&self, phase: f64) -> Self {
        BoundaryPath {
            samples: self
                .samples
                .iter()
                .map(|(t, s)| (*t, s.rotate(phase)))
                .collect(),
            source: self.source.as_ref().map(|f| {
                let f = f.clone();
                Arc::new(move |t| Ok(f(t)?.rotate(phase))) as PathSource
            }),
        }
    }

    /// `t -> sigma(1 - t)`.
    pub fn reversed(&self) -> Self {
        BoundaryPath {
            samples: self
                .samples
                .iter()
                .rev()
                .map(|(t, s)| (1.0 - t, s.clone()))
                .collect(),
            source: self.source.as_ref().map(|f| {
                let f = f.clone();
                Arc::new(move |t| f(1.0 - t)) as PathSource
            }),
        }
    }

    /// The pieces on `[0, a]` and `[a, 1]`, each reparametrized over `[0, 1]`.
    pub fn split_at(&self, a: f64) -> Result<(Self, Self)> {
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::InvalidInput(format!(
                "split point {a} is not in (0, 1)"
            )));
        }
        let piece = |lo: f64, hi: f64| -> Result<Self> {
            let inner: Vec<f64> = self
                .grid()
                .into_iter()
                .filter(|t| *t > lo && *t < hi)
                .collect();
            let mut samples = vec![(0.0, self.at(lo)?)];
            for t in inner {
                samples.push(((t - lo) / (hi - lo), self.at(t)?));
            }
            samples.push((1.0, self.at(hi)?));
            let mut p = Self::from_samples(samples)?;
            p.source = self.source.as_ref().map(|f| {
                let f = f.clone();
                Arc::new(move |s| f(lo + s * (hi - lo))) as PathSource
            });
            Ok(p)
        };
        Ok((piece(0.0, a)?, piece(a, 1.0)?))
    }
}
