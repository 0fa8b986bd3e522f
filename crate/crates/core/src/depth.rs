//! ACH depth estimators.
//!
//! The kernel is the ratio between the hull area of a few reference graphs and
//! the hull area once the query graph is added. Estimators differ only in which
//! reference subsets they average that kernel over:
//!
//! - [`exact_depth`]: every size-`J` subset (complete U-statistic);
//! - [`averaged_exact_depth`]: the mean of the exact depths of degrees `1..=J`;
//! - [`mc_depth`]: `K` random subsets (incomplete U-statistic);
//! - [`population_depth`]: exact expectation under a finitely supported law,
//!   used as a ground-truth oracle.
//!
//! Hull areas are computed from each curve's own hull ring, which is computed
//! once per curve: the hull of a union equals the hull of the members' hulls.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::curves::{CurveBatch, SampledCurve};
use crate::error::{Error, Result};
use crate::geometry::{convex_hull, HullScratch, Point};
use crate::rng::{self, Domain};

/// Largest number of subsets the exact estimator will enumerate.
pub const EXACT_SUBSET_LIMIT: f64 = 1e7;

/// Largest number of ordered tuples the population oracle will enumerate.
pub const POPULATION_TUPLE_LIMIT: f64 = 1e6;

/// Default number of grid points of the integrated baseline.
pub const BASELINE_GRID: usize = 100;

/// `C(n, k)` as a float.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    libm::round(acc)
}

/// Hull ring of one curve graph.
pub fn curve_ring(c: &SampledCurve) -> Vec<Point> {
    // a valid curve has at least two knots
    convex_hull(&c.graph_vertices())
        .map(|h| h.vertices().to_vec())
        .unwrap_or_default()
}

#[inline]
fn ratio(numerator: f64, denominator: f64) -> f64 {
    if denominator > 0.0 {
        (numerator / denominator).clamp(0.0, 1.0)
    } else {
        // the query adds nothing to a degenerate hull
        1.0
    }
}

/// Hull-area ratio of `subset` against `subset ∪ {x}`.
///
/// Returns 1 when the augmented hull has zero area.
pub fn ach_ratio(subset: &[&SampledCurve], x: &SampledCurve) -> Result<f64> {
    if subset.is_empty() {
        return Err(Error::Empty("ratio subset"));
    }
    let rings: Vec<Vec<Point>> = subset.iter().map(|c| curve_ring(c)).collect();
    let x_ring = curve_ring(x);
    let mut scratch = HullScratch::new();
    let num = scratch.union_area(rings.iter().map(Vec::as_slice));
    let den = scratch.union_area(
        rings
            .iter()
            .map(Vec::as_slice)
            .chain(core::iter::once(x_ring.as_slice())),
    );
    Ok(ratio(num, den))
}

/// A reference sample with each curve's hull ring precomputed.
#[derive(Debug, Clone)]
pub struct Reference {
    rings: Vec<Vec<Point>>,
}

impl Reference {
    pub fn new(batch: &CurveBatch) -> Self {
        Self::from_curves(batch.curves())
    }

    pub fn from_curves(curves: &[SampledCurve]) -> Self {
        Self {
            rings: curves.iter().map(curve_ring).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.rings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rings.is_empty()
    }

    pub fn ring(&self, i: usize) -> &[Point] {
        &self.rings[i]
    }

    fn subset_rings<'a>(&'a self, members: &'a [usize]) -> impl Iterator<Item = &'a [Point]> + 'a {
        members.iter().map(move |&i| self.rings[i].as_slice())
    }

    /// Kernel value for the reference members `members` and a query ring.
    pub fn ratio(&self, members: &[usize], x_ring: &[Point], scratch: &mut HullScratch) -> f64 {
        let num = scratch.union_area(self.subset_rings(members));
        let den = scratch.union_area(self.subset_rings(members).chain(core::iter::once(x_ring)));
        ratio(num, den)
    }

    fn check_degree(&self, j: usize) -> Result<()> {
        if j == 0 {
            return Err(Error::ZeroDegree);
        }
        if j > self.len() {
            return Err(Error::DegreeTooLarge { j, n: self.len() });
        }
        Ok(())
    }

    fn check_exact_budget(&self, j: usize) -> Result<()> {
        let subsets = binomial(self.len(), j);
        if subsets > EXACT_SUBSET_LIMIT {
            return Err(Error::SubsetBudget {
                subsets,
                limit: EXACT_SUBSET_LIMIT,
            });
        }
        Ok(())
    }

    /// Complete U-statistic of degree `j` for a query ring.
    pub fn exact_depth(&self, x_ring: &[Point], j: usize) -> Result<f64> {
        self.check_degree(j)?;
        self.check_exact_budget(j)?;
        let mut scratch = HullScratch::new();
        let mut sum = 0.0;
        let mut count = 0u64;
        revolving_door(self.len(), j, |members| {
            sum += self.ratio(members, x_ring, &mut scratch);
            count += 1;
        });
        Ok(sum / count as f64)
    }

    /// Mean of the exact depths of degrees `1..=j`.
    pub fn averaged_exact_depth(&self, x_ring: &[Point], j: usize) -> Result<f64> {
        self.check_degree(j)?;
        (1..=j)
            .try_fold(0.0, |acc, d| Ok(acc + self.exact_depth(x_ring, d)?))
            .map(|s| s / j as f64)
    }
}

/// Visits every `t`-subset of `0..n` in revolving-door order: consecutive
/// subsets differ by exactly one element swapped in and one swapped out.
pub fn revolving_door(n: usize, t: usize, mut visit: impl FnMut(&[usize])) {
    if t == 0 || t > n {
        return;
    }
    // c[1..=t] ascending, c[t + 1] = n sentinel
    let mut c = vec![0usize; t + 2];
    for (j, slot) in c.iter_mut().enumerate().take(t + 1).skip(1) {
        *slot = j - 1;
    }
    c[t + 1] = n;
    #[derive(Clone, Copy)]
    enum Step {
        Decrease,
        Increase,
    }
    'visit: loop {
        visit(&c[1..=t]);
        let mut step = if t % 2 == 1 {
            if c[1] + 1 < c[2] {
                c[1] += 1;
                continue;
            }
            Step::Decrease
        } else {
            if c[1] > 0 {
                c[1] -= 1;
                continue;
            }
            Step::Increase
        };
        let mut j = 2;
        loop {
            if j > t {
                return;
            }
            match step {
                Step::Decrease => {
                    if c[j] >= j {
                        c[j] = c[j - 1];
                        c[j - 1] = j - 2;
                        continue 'visit;
                    }
                    step = Step::Increase;
                }
                Step::Increase => {
                    if c[j] + 1 < c[j + 1] {
                        c[j - 1] = c[j];
                        c[j] += 1;
                        continue 'visit;
                    }
                    step = Step::Decrease;
                }
            }
            j += 1;
        }
    }
}

/// Exact empirical depth `D_{J,n}(x)`: the mean ratio over all size-`J`
/// subsets of the batch.
pub fn exact_depth(batch: &CurveBatch, x: &SampledCurve, j: usize) -> Result<f64> {
    Reference::new(batch).exact_depth(&curve_ring(x), j)
}

/// `(1/J) Σ_{j=1..J} D_{j,n}(x)`.
pub fn averaged_exact_depth(batch: &CurveBatch, x: &SampledCurve, j: usize) -> Result<f64> {
    Reference::new(batch).averaged_exact_depth(&curve_ring(x), j)
}

/// A finitely supported law on curves.
#[derive(Debug, Clone)]
pub struct DiscreteCurveDistribution {
    atoms: Vec<SampledCurve>,
    probs: Vec<f64>,
}

impl DiscreteCurveDistribution {
    pub fn new(atoms: Vec<SampledCurve>, probs: Vec<f64>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::Empty("distribution support"));
        }
        if atoms.len() != probs.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} atoms but {} probabilities",
                atoms.len(),
                probs.len()
            )));
        }
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidDistribution(
                "probabilities must be finite and non-negative".to_string(),
            ));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(Self { atoms, probs })
    }

    /// Uniform law on `atoms`.
    pub fn uniform(atoms: Vec<SampledCurve>) -> Result<Self> {
        let p = 1.0 / atoms.len().max(1) as f64;
        let probs = vec![p; atoms.len()];
        Self::new(atoms, probs)
    }

    pub fn atoms(&self) -> &[SampledCurve] {
        &self.atoms
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

/// Exact population depth `D_J(x, P)` (or its averaged version) for a discrete
/// law, by enumerating all ordered i.i.d. `J`-tuples with product weights.
pub fn population_depth(
    dist: &DiscreteCurveDistribution,
    x: &SampledCurve,
    j: usize,
    averaged: bool,
) -> Result<f64> {
    if j == 0 {
        return Err(Error::ZeroDegree);
    }
    let s = dist.atoms.len();
    let tuples = libm::pow(s as f64, j as f64);
    if tuples > POPULATION_TUPLE_LIMIT {
        return Err(Error::EnumerationBudget {
            tuples,
            limit: POPULATION_TUPLE_LIMIT,
        });
    }
    let reference = Reference::from_curves(&dist.atoms);
    let x_ring = curve_ring(x);
    let mut scratch = HullScratch::new();

    let degree_value = |d: usize, scratch: &mut HullScratch| -> f64 {
        let mut tuple = vec![0usize; d];
        let mut total = 0.0;
        loop {
            let weight: f64 = tuple.iter().map(|&a| dist.probs[a]).product();
            if weight > 0.0 {
                total += weight * reference.ratio(&tuple, &x_ring, scratch);
            }
            // odometer increment
            let mut pos = 0;
            loop {
                if pos == d {
                    return total;
                }
                tuple[pos] += 1;
                if tuple[pos] < s {
                    break;
                }
                tuple[pos] = 0;
                pos += 1;
            }
        }
    };

    if averaged {
        let sum: f64 = (1..=j).map(|d| degree_value(d, &mut scratch)).sum();
        Ok(sum / j as f64)
    } else {
        Ok(degree_value(j, &mut scratch))
    }
}

/// Degree probabilities `w_l = C(n, l) / Σ_{m=1..J} C(n, m)` for `l = 1..=J`.
pub fn degree_weights(n: usize, j: usize) -> Vec<f64> {
    let raw: Vec<f64> = (1..=j).map(|l| binomial(n, l)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}

/// The random subsets of an incomplete U-statistic, with their numerator
/// areas cached (they do not depend on the query).
#[derive(Debug, Clone)]
pub struct McPlan {
    offsets: Vec<usize>,
    members: Vec<usize>,
    numerators: Vec<f64>,
}

/// One Monte-Carlo draw: the chosen reference members and their hull area.
#[derive(Debug, Clone, PartialEq)]
pub struct Draw {
    pub members: Vec<usize>,
    pub numerator: f64,
}

/// How draws are sampled.
#[derive(Debug, Clone)]
pub struct DrawSpec {
    n: usize,
    degree: usize,
    seed: u64,
    /// cumulative degree weights; `None` draws every subset at `degree`
    cumulative: Option<Vec<f64>>,
}

impl DrawSpec {
    pub fn new(n: usize, degree: usize, seed: u64, averaged: bool) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        if degree > n {
            return Err(Error::DegreeTooLarge { j: degree, n });
        }
        let cumulative = averaged.then(|| {
            let mut acc = 0.0;
            degree_weights(n, degree)
                .into_iter()
                .map(|w| {
                    acc += w;
                    acc
                })
                .collect()
        });
        Ok(Self {
            n,
            degree,
            seed,
            cumulative,
        })
    }

    /// Reference members of draw `k`; depends only on `(seed, k)`.
    pub fn members(&self, k: u64) -> Vec<usize> {
        let mut rng = rng::stream(self.seed, Domain::Subsets, k);
        let size = match &self.cumulative {
            None => self.degree,
            Some(cum) => {
                let u: f64 = rng.random();
                1 + cum.iter().position(|&c| u < c).unwrap_or(cum.len() - 1)
            }
        };
        let mut members = rand::seq::index::sample(&mut rng, self.n, size).into_vec();
        members.sort_unstable();
        members
    }

    pub fn draw(&self, reference: &Reference, k: u64, scratch: &mut HullScratch) -> Draw {
        let members = self.members(k);
        let numerator = scratch.union_area(members.iter().map(|&i| reference.ring(i)));
        Draw { members, numerator }
    }
}

impl McPlan {
    /// Draws `k` subsets serially.
    pub fn new(reference: &Reference, spec: &DrawSpec, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroDraws);
        }
        let mut scratch = HullScratch::new();
        Ok(Self::from_draws(
            (0..k as u64).map(|i| spec.draw(reference, i, &mut scratch)),
        ))
    }

    /// Assembles a plan from draws given in draw-index order.
    pub fn from_draws(draws: impl IntoIterator<Item = Draw>) -> Self {
        let mut plan = Self {
            offsets: vec![0],
            members: Vec::new(),
            numerators: Vec::new(),
        };
        for d in draws {
            plan.members.extend_from_slice(&d.members);
            plan.offsets.push(plan.members.len());
            plan.numerators.push(d.numerator);
        }
        plan
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    pub fn members(&self, k: usize) -> &[usize] {
        &self.members[self.offsets[k]..self.offsets[k + 1]]
    }

    /// Kernel value of draw `k` for a query ring.
    pub fn ratio(
        &self,
        reference: &Reference,
        k: usize,
        x_ring: &[Point],
        scratch: &mut HullScratch,
    ) -> f64 {
        let members = self.members(k);
        let den = scratch.union_area(
            members
                .iter()
                .map(|&i| reference.ring(i))
                .chain(core::iter::once(x_ring)),
        );
        ratio(self.numerators[k], den)
    }

    /// Mean kernel value over all draws, summed in draw order.
    pub fn depth(&self, reference: &Reference, x_ring: &[Point], scratch: &mut HullScratch) -> f64 {
        let sum: f64 = (0..self.len())
            .map(|k| self.ratio(reference, k, x_ring, scratch))
            .sum();
        sum / self.len() as f64
    }
}

/// Incomplete U-statistic over `K` random subsets.
///
/// Non-averaged: every draw is a uniform size-`J` subset. Averaged: each draw
/// first picks a degree `l` with probability proportional to `C(n, l)`, then a
/// uniform size-`l` subset. Draw `k` uses the stream `(seed, k)`.
pub fn mc_depth(
    batch: &CurveBatch,
    x: &SampledCurve,
    j: usize,
    k: usize,
    seed: u64,
    averaged: bool,
) -> Result<f64> {
    if k == 0 {
        return Err(Error::ZeroDraws);
    }
    let reference = Reference::new(batch);
    let spec = DrawSpec::new(reference.len(), j, seed, averaged)?;
    let plan = McPlan::new(&reference, &spec, k)?;
    let mut scratch = HullScratch::new();
    Ok(plan.depth(&reference, &curve_ring(x), &mut scratch))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Estimator {
    Exact,
    MonteCarlo,
}

/// Estimator settings shared by every query of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepthConfig {
    pub degree: usize,
    pub estimator: Estimator,
    /// Monte-Carlo draw count; `None` means `5 n`.
    pub draws: Option<usize>,
    pub averaged: bool,
    pub seed: u64,
}

impl Default for DepthConfig {
    fn default() -> Self {
        Self {
            degree: 2,
            estimator: Estimator::MonteCarlo,
            draws: None,
            averaged: true,
            seed: 0,
        }
    }
}

impl DepthConfig {
    pub fn exact(degree: usize, averaged: bool) -> Self {
        Self {
            degree,
            estimator: Estimator::Exact,
            draws: None,
            averaged,
            seed: 0,
        }
    }

    pub fn monte_carlo(degree: usize, draws: Option<usize>, seed: u64, averaged: bool) -> Self {
        Self {
            degree,
            estimator: Estimator::MonteCarlo,
            draws,
            averaged,
            seed,
        }
    }

    /// Effective `K` for a reference of size `n`.
    pub fn draws_for(&self, n: usize) -> usize {
        self.draws.unwrap_or(5 * n)
    }

    /// Checks everything that can be checked before scoring starts.
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.degree == 0 {
            return Err(Error::ZeroDegree);
        }
        if self.degree > n {
            return Err(Error::DegreeTooLarge { j: self.degree, n });
        }
        match self.estimator {
            Estimator::Exact => {
                let top = binomial(n, self.degree);
                if top > EXACT_SUBSET_LIMIT {
                    return Err(Error::SubsetBudget {
                        subsets: top,
                        limit: EXACT_SUBSET_LIMIT,
                    });
                }
            }
            Estimator::MonteCarlo => {
                if self.draws_for(n) == 0 {
                    return Err(Error::ZeroDraws);
                }
            }
        }
        Ok(())
    }
}

/// Scores every query against `batch`, serially.
pub fn score_queries(
    batch: &CurveBatch,
    queries: &[SampledCurve],
    config: &DepthConfig,
) -> Result<Vec<f64>> {
    let reference = Reference::new(batch);
    config.validate(reference.len())?;
    let rings: Vec<Vec<Point>> = queries.iter().map(curve_ring).collect();
    match config.estimator {
        Estimator::Exact => rings
            .iter()
            .map(|r| {
                if config.averaged {
                    reference.averaged_exact_depth(r, config.degree)
                } else {
                    reference.exact_depth(r, config.degree)
                }
            })
            .collect(),
        Estimator::MonteCarlo => {
            let spec = DrawSpec::new(reference.len(), config.degree, config.seed, config.averaged)?;
            let plan = McPlan::new(&reference, &spec, config.draws_for(reference.len()))?;
            let mut scratch = HullScratch::new();
            Ok(rings
                .iter()
                .map(|r| plan.depth(&reference, r, &mut scratch))
                .collect())
        }
    }
}

/// Indices sorted by ascending score; ties keep input order.
pub fn ascending_order(scores: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));
    order
}

/// Per-query depth scores with the induced center-outward ranking.
#[derive(Debug, Clone, PartialEq)]
pub struct DepthReport {
    pub config: DepthConfig,
    /// `(id, depth)` in query order.
    pub scores: Vec<(String, f64)>,
    /// Query indices by ascending depth (most atypical first).
    pub ranking: Vec<usize>,
}

impl DepthReport {
    pub fn new(config: DepthConfig, ids: Vec<String>, depths: Vec<f64>) -> Self {
        let ranking = ascending_order(&depths);
        Self {
            config,
            scores: ids.into_iter().zip(depths).collect(),
            ranking,
        }
    }

    /// 1-based rank of every query, in query order.
    pub fn ranks(&self) -> Vec<usize> {
        let mut ranks = vec![0; self.ranking.len()];
        for (pos, &i) in self.ranking.iter().enumerate() {
            ranks[i] = pos + 1;
        }
        ranks
    }

    /// Ids by ascending depth.
    pub fn ranked_ids(&self) -> Vec<&str> {
        self.ranking
            .iter()
            .map(|&i| self.scores[i].0.as_str())
            .collect()
    }

    pub fn depths(&self) -> Vec<f64> {
        self.scores.iter().map(|s| s.1).collect()
    }
}

pub fn depth_report(
    batch: &CurveBatch,
    queries: &CurveBatch,
    config: &DepthConfig,
) -> Result<DepthReport> {
    let depths = score_queries(batch, queries.curves(), config)?;
    Ok(DepthReport::new(
        *config,
        queries.ids().map(String::from).collect(),
        depths,
    ))
}

/// Integral-type baseline: univariate halfspace depth
/// `min(#{v <= x(t)}, #{v >= x(t)}) / n` averaged over a uniform grid.
pub fn integrated_baseline_depth(batch: &CurveBatch, x: &SampledCurve) -> Result<f64> {
    integrated_baseline_depth_on_grid(batch, x, BASELINE_GRID)
}

pub fn integrated_baseline_depth_on_grid(
    batch: &CurveBatch,
    x: &SampledCurve,
    grid: usize,
) -> Result<f64> {
    if grid < 2 {
        return Err(Error::InvalidParameter(format!(
            "baseline grid needs at least 2 points, got {grid}"
        )));
    }
    let n = batch.len() as f64;
    let ts = crate::curves::uniform_grid(grid);
    let mut total = 0.0;
    for &t in &ts {
        let xv = x.evaluate_linear(t)?;
        let (mut below, mut above) = (0usize, 0usize);
        for c in batch {
            let v = c.evaluate_linear(t)?;
            if v <= xv {
                below += 1;
            }
            if v >= xv {
                above += 1;
            }
        }
        total += below.min(above) as f64 / n;
    }
    Ok(total / grid as f64)
}
