//! Ranking stability and anomaly-detection harnesses.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::curves::{CurveBatch, SampledCurve};
use crate::depth::{self, ascending_order, DepthConfig};
use crate::error::{Error, Result};
use crate::rng::{derive_seed, Domain};
use crate::synthdata::{inject, AnomalyKind, AnomalySpec, Contamination, GenSpec};

/// Curve ids in ascending-depth order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ranking {
    order: Vec<String>,
}

impl Ranking {
    /// Validates that `order` has no repeated id.
    pub fn new(order: Vec<String>) -> Result<Self> {
        let mut seen = alloc::collections::BTreeSet::new();
        for id in &order {
            if !seen.insert(id.as_str()) {
                return Err(Error::DuplicateId(id.clone()));
            }
        }
        Ok(Self { order })
    }

    /// Ranks ids by ascending score; ties keep input order.
    pub fn from_scores(ids: &[&str], scores: &[f64]) -> Result<Self> {
        if ids.len() != scores.len() {
            return Err(Error::InvalidParameter(alloc::format!(
                "{} ids but {} scores",
                ids.len(),
                scores.len()
            )));
        }
        Self::new(
            ascending_order(scores)
                .into_iter()
                .map(|i| ids[i].to_string())
                .collect(),
        )
    }

    pub fn order(&self) -> &[String] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Counts inversions of `seq` by merge sort.
fn inversions(seq: &mut [usize], buf: &mut [usize]) -> u64 {
    let n = seq.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let (left, right) = seq.split_at_mut(mid);
    let (lbuf, rbuf) = buf.split_at_mut(mid);
    let mut count = inversions(left, lbuf) + inversions(right, rbuf);
    let (mut i, mut j, mut k) = (0, 0, 0);
    while i < left.len() && j < right.len() {
        if left[i] <= right[j] {
            buf[k] = left[i];
            i += 1;
        } else {
            buf[k] = right[j];
            count += (left.len() - i) as u64;
            j += 1;
        }
        k += 1;
    }
    buf[k..k + left.len() - i].copy_from_slice(&left[i..]);
    k += left.len() - i;
    buf[k..k + right.len() - j].copy_from_slice(&right[j..]);
    seq.copy_from_slice(buf);
    count
}

/// Fraction of discordant pairs, `Σ_{i<j} 1{disagree} / (n(n-1)/2)`.
pub fn kendall_tau_distance(a: &Ranking, b: &Ranking) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::MismatchedIds);
    }
    let pos_b: BTreeMap<&str, usize> = b
        .order
        .iter()
        .enumerate()
        .map(|(i, id)| (id.as_str(), i))
        .collect();
    let mut seq = a
        .order
        .iter()
        .map(|id| pos_b.get(id.as_str()).copied().ok_or(Error::MismatchedIds))
        .collect::<Result<Vec<_>>>()?;
    let n = seq.len();
    if n < 2 {
        return Ok(0.0);
    }
    let mut buf = vec![0; n];
    let discordant = inversions(&mut seq, &mut buf);
    let pairs = (n as u64) * (n as u64 - 1) / 2;
    Ok(discordant as f64 / pairs as f64)
}

/// Number of true anomalies among the `k` lowest-scored curves.
pub fn detected_count(scores: &[f64], labels: &[bool], k: usize) -> Result<usize> {
    if scores.len() != labels.len() {
        return Err(Error::InvalidParameter(alloc::format!(
            "{} scores but {} labels",
            scores.len(),
            labels.len()
        )));
    }
    if k == 0 || k > scores.len() {
        return Err(Error::InvalidParameter(alloc::format!(
            "k = {k} must be in 1..={}",
            scores.len()
        )));
    }
    Ok(ascending_order(scores)
        .into_iter()
        .take(k)
        .filter(|&i| labels[i])
        .count())
}

/// Share of the true anomalies found among the `k` lowest-scored curves.
pub fn portion_detected(scores: &[f64], labels: &[bool], k: usize) -> Result<f64> {
    let hits = detected_count(scores, labels, k)?;
    let truth = labels.iter().filter(|&&l| l).count();
    if truth == 0 {
        return Err(Error::InvalidParameter(
            "no true anomalies to detect".to_string(),
        ));
    }
    Ok(hits as f64 / truth as f64)
}

/// Scores query curves against a reference batch.
///
/// `seed` feeds the randomized estimators; deterministic methods ignore it.
pub trait Scorer {
    fn name(&self) -> &str;
    fn score(
        &self,
        reference: &CurveBatch,
        queries: &[SampledCurve],
        seed: u64,
    ) -> Result<Vec<f64>>;
}

/// The depth methods available to the harnesses, evaluated serially.
#[derive(Debug, Clone, PartialEq)]
pub enum Method {
    Ach(DepthConfig),
    IntegratedBaseline,
}

impl Scorer for Method {
    fn name(&self) -> &str {
        match self {
            Method::Ach(_) => "ach",
            Method::IntegratedBaseline => "integrated",
        }
    }

    fn score(
        &self,
        reference: &CurveBatch,
        queries: &[SampledCurve],
        seed: u64,
    ) -> Result<Vec<f64>> {
        match self {
            Method::Ach(cfg) => {
                let cfg = DepthConfig { seed, ..*cfg };
                depth::score_queries(reference, queries, &cfg)
            }
            Method::IntegratedBaseline => queries
                .iter()
                .map(|q| depth::integrated_baseline_depth(reference, q))
                .collect(),
        }
    }
}

impl<S: Scorer + ?Sized> Scorer for Box<S> {
    fn name(&self) -> &str {
        (**self).name()
    }

    fn score(
        &self,
        reference: &CurveBatch,
        queries: &[SampledCurve],
        seed: u64,
    ) -> Result<Vec<f64>> {
        (**self).score(reference, queries, seed)
    }
}

/// One harness measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub method: String,
    pub kind: String,
    /// Contamination fraction (robustness) or severity (detection).
    pub param: f64,
    pub repetition: usize,
    pub value: f64,
}

/// Mean and standard deviation of one `(method, kind, param)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub method: String,
    pub kind: String,
    pub param: f64,
    pub repetitions: usize,
    pub mean: f64,
    pub sd: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BenchmarkResult {
    pub records: Vec<Record>,
}

impl BenchmarkResult {
    /// Per-cell statistics in first-appearance order. `sd` uses `n - 1`.
    pub fn summaries(&self) -> Vec<Summary> {
        let mut cells: Vec<(String, String, f64, Vec<f64>)> = Vec::new();
        for r in &self.records {
            match cells
                .iter_mut()
                .find(|c| c.0 == r.method && c.1 == r.kind && c.2 == r.param)
            {
                Some(c) => c.3.push(r.value),
                None => cells.push((r.method.clone(), r.kind.clone(), r.param, vec![r.value])),
            }
        }
        cells
            .into_iter()
            .map(|(method, kind, param, v)| {
                let n = v.len() as f64;
                let mean = v.iter().sum::<f64>() / n;
                let sd = if v.len() > 1 {
                    libm::sqrt(v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0))
                } else {
                    0.0
                };
                Summary {
                    method,
                    kind,
                    param,
                    repetitions: v.len(),
                    mean,
                    sd,
                }
            })
            .collect()
    }

    /// Mean value of a cell, if present.
    pub fn mean(&self, kind: &str, param: f64) -> Option<f64> {
        self.summaries()
            .into_iter()
            .find(|s| s.kind == kind && s.param == param)
            .map(|s| s.mean)
    }
}

/// A data family paired with the anomaly type injected into it.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchCase {
    pub gen: GenSpec,
    pub anomaly: AnomalyKind,
}

/// Seeds of repetition `r`: `(data, anomalies, estimator)`.
fn repetition_seeds(seed: u64, r: usize) -> (u64, u64, u64) {
    let r = r as u64;
    (
        derive_seed(seed, Domain::Repetitions, 3 * r),
        derive_seed(seed, Domain::Repetitions, 3 * r + 1),
        derive_seed(seed, Domain::Repetitions, 3 * r + 2),
    )
}

/// Kendall distance between the ranking of clean curves against the clean
/// reference and against the contaminated reference.
///
/// For each repetition a fresh clean batch is generated and, for each `alpha`,
/// `⌊alpha n⌋` of its curves are replaced by anomalies to form the
/// contaminated reference. Both rankings use the same estimator seed, so at
/// `alpha = 0` they coincide.
pub fn robustness_bench(
    cases: &[BenchCase],
    alphas: &[f64],
    scorer: &dyn Scorer,
    repetitions: usize,
    seed: u64,
) -> Result<BenchmarkResult> {
    let mut result = BenchmarkResult::default();
    for case in cases {
        for r in 0..repetitions {
            let (data_seed, anomaly_seed, est_seed) = repetition_seeds(seed, r);
            let clean = GenSpec {
                seed: data_seed,
                ..case.gen
            }
            .generate()?;
            let ids: Vec<&str> = clean.ids().collect();
            let base = scorer.score(&clean, clean.curves(), est_seed)?;
            let sigma0 = Ranking::from_scores(&ids, &base)?;
            for &alpha in alphas {
                let spec =
                    AnomalySpec::new(case.anomaly, Contamination::Fraction(alpha), anomaly_seed);
                let (dirty, _) = inject(&clean, &spec)?;
                let scores = scorer.score(&dirty, clean.curves(), est_seed)?;
                let sigma = Ranking::from_scores(&ids, &scores)?;
                result.records.push(Record {
                    method: scorer.name().to_string(),
                    kind: case.anomaly.name().to_string(),
                    param: alpha,
                    repetition: r,
                    value: kendall_tau_distance(&sigma0, &sigma)?,
                });
            }
        }
    }
    Ok(result)
}

/// Number of injected anomalies among the `m` lowest-depth curves, per
/// severity.
///
/// Each repetition fixes the clean batch and the anomalous positions; only the
/// severity parameter changes along the grid. Curves are scored against the
/// contaminated batch itself.
pub fn detection_bench(
    gen: &GenSpec,
    anomaly: AnomalyKind,
    severities: &[f64],
    m: usize,
    scorer: &dyn Scorer,
    repetitions: usize,
    seed: u64,
) -> Result<BenchmarkResult> {
    let mut result = BenchmarkResult::default();
    for r in 0..repetitions {
        let (data_seed, anomaly_seed, est_seed) = repetition_seeds(seed, r);
        let clean = GenSpec {
            seed: data_seed,
            ..*gen
        }
        .generate()?;
        for &s in severities {
            let spec = AnomalySpec::new(
                anomaly.at_severity(s),
                Contamination::Count(m),
                anomaly_seed,
            );
            let (dirty, labels) = inject(&clean, &spec)?;
            let scores = scorer.score(&dirty, dirty.curves(), est_seed)?;
            let hits = if m == 0 {
                0
            } else {
                detected_count(&scores, &labels, m)?
            };
            result.records.push(Record {
                method: scorer.name().to_string(),
                kind: anomaly.name().to_string(),
                param: s,
                repetition: r,
                value: hits as f64,
            });
        }
    }
    Ok(result)
}
