//! Sampled curves on the unit time interval and their piecewise-linear
//! reconstruction.
//!
//! Curves never share a grid implicitly: every curve carries its own strictly
//! increasing knots. Depth computations work on the knot vertices directly
//! (the convex hull of a polyline is generated by its vertices), so nothing in
//! this crate resamples a curve behind the caller's back.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{PlanarPointSet, Point};

/// One function observed at finitely many strictly increasing times in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    id: String,
    times: Vec<f64>,
    values: Vec<f64>,
}

impl SampledCurve {
    /// Validates and builds a curve.
    ///
    /// Requires at least two knots, matching lengths, finite values, strictly
    /// increasing times and all times inside `[0, 1]`. Duplicate time stamps are
    /// rejected rather than averaged.
    pub fn new(id: impl Into<String>, times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let id = id.into();
        let bad = |reason: String| Error::InvalidCurve {
            id: id.clone(),
            reason,
        };
        if times.len() != values.len() {
            return Err(bad(format!(
                "{} times but {} values",
                times.len(),
                values.len()
            )));
        }
        if times.len() < 2 {
            return Err(bad(format!("needs at least 2 knots, got {}", times.len())));
        }
        for (k, (&t, &v)) in times.iter().zip(&values).enumerate() {
            if !t.is_finite() || !(0.0..=1.0).contains(&t) {
                return Err(bad(format!("time {t} at knot {k} is outside [0, 1]")));
            }
            if !v.is_finite() {
                return Err(bad(format!("value at knot {k} is not finite")));
            }
        }
        if let Some(k) = times.windows(2).position(|w| w[1] <= w[0]) {
            return Err(bad(format!(
                "times not strictly increasing at knot {} ({} then {})",
                k + 1,
                times[k],
                times[k + 1]
            )));
        }
        Ok(Self { id, times, values })
    }

    /// Builds a curve observed on an arbitrary interval `[t_start, t_end]` by
    /// mapping the times affinely onto `[0, 1]`.
    pub fn from_interval(
        id: impl Into<String>,
        times: Vec<f64>,
        values: Vec<f64>,
        t_start: f64,
        t_end: f64,
    ) -> Result<Self> {
        if !(t_start.is_finite() && t_end.is_finite() && t_end > t_start) {
            return Err(Error::InvalidParameter(format!(
                "rescale interval [{t_start}, {t_end}] is empty or not finite"
            )));
        }
        let span = t_end - t_start;
        let times = times.into_iter().map(|t| (t - t_start) / span).collect();
        Self::new(id, times, values)
    }

    /// Curve on the uniform grid `k / (p - 1)`, `k = 0..p`.
    pub fn on_uniform_grid(id: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        let times = uniform_grid(values.len());
        Self::new(id, times, values)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Observed time span `(first knot, last knot)`.
    pub fn span(&self) -> (f64, f64) {
        (self.times[0], self.times[self.times.len() - 1])
    }

    /// Piecewise-linear interpolant at `t`. Exact at knots; no extrapolation.
    pub fn evaluate_linear(&self, t: f64) -> Result<f64> {
        let (lo, hi) = self.span();
        if !(t >= lo && t <= hi) {
            return Err(Error::Extrapolation {
                id: self.id.clone(),
                t,
                lo,
                hi,
            });
        }
        // first knot with time >= t
        let k = self.times.partition_point(|&s| s < t);
        if self.times[k] == t {
            return Ok(self.values[k]);
        }
        let (t0, t1) = (self.times[k - 1], self.times[k]);
        let (v0, v1) = (self.values[k - 1], self.values[k]);
        Ok(v0 + (v1 - v0) * ((t - t0) / (t1 - t0)))
    }

    /// Knot points `(t_k, x(t_k))` of the polyline graph.
    pub fn graph_vertices(&self) -> PlanarPointSet {
        PlanarPointSet::new(
            self.times
                .iter()
                .zip(&self.values)
                .map(|(&t, &y)| Point::new(t, y))
                .collect(),
        )
    }

    /// Same knots, values mapped through `f`.
    pub fn map_values(&self, mut f: impl FnMut(f64, f64) -> f64) -> Result<Self> {
        let values = self
            .times
            .iter()
            .zip(&self.values)
            .map(|(&t, &v)| f(t, v))
            .collect();
        Self::new(self.id.clone(), self.times.clone(), values)
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    /// Largest gap between consecutive knots.
    pub fn max_gap(&self) -> f64 {
        self.times
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max)
    }
}

/// `p` equispaced knots on `[0, 1]`, endpoints exact.
pub fn uniform_grid(p: usize) -> Vec<f64> {
    match p {
        0 => Vec::new(),
        1 => alloc::vec![0.0],
        _ => {
            let last = (p - 1) as f64;
            (0..p)
                .map(|k| if k == p - 1 { 1.0 } else { k as f64 / last })
                .collect()
        }
    }
}

/// An ordered, nonempty collection of curves with unique ids.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveBatch {
    curves: Vec<SampledCurve>,
}

impl CurveBatch {
    pub fn new(curves: Vec<SampledCurve>) -> Result<Self> {
        if curves.is_empty() {
            return Err(Error::Empty("curve batch"));
        }
        let mut seen = BTreeSet::new();
        for c in &curves {
            if !seen.insert(c.id()) {
                return Err(Error::DuplicateId(c.id().to_string()));
            }
        }
        Ok(Self { curves })
    }

    pub fn curves(&self) -> &[SampledCurve] {
        &self.curves
    }

    pub fn into_curves(self) -> Vec<SampledCurve> {
        self.curves
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&SampledCurve> {
        self.curves.get(i)
    }

    pub fn iter(&self) -> core::slice::Iter<'_, SampledCurve> {
        self.curves.iter()
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.curves.iter().map(SampledCurve::id)
    }

    pub fn mesh_stats(&self) -> MeshStats {
        mesh_stats(self)
    }
}

impl<'a> IntoIterator for &'a CurveBatch {
    type Item = &'a SampledCurve;
    type IntoIter = core::slice::Iter<'a, SampledCurve>;

    fn into_iter(self) -> Self::IntoIter {
        self.curves.iter()
    }
}

/// Mesh fineness of a batch: the largest consecutive-knot gap over all curves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshStats {
    pub delta: f64,
}

pub fn mesh_stats(batch: &CurveBatch) -> MeshStats {
    MeshStats {
        delta: batch.iter().map(SampledCurve::max_gap).fold(0.0, f64::max),
    }
}
