//! Thread-parallel scoring.
//!
//! Work is split across draws (building the Monte-Carlo plan) and across
//! queries. Every per-query sum still runs serially in draw order, so the
//! output is bit-identical to the serial scorer at any thread count.

use std::sync::Arc;

use ach_core::depth::{self, curve_ring, DrawSpec};
use ach_core::eval::{Method, Scorer};
use ach_core::geometry::HullScratch;
use ach_core::{CurveBatch, DepthConfig, DepthReport, Estimator, McPlan, Reference, SampledCurve};
use rayon::prelude::*;

/// Wraps a [`Method`] and evaluates it on a dedicated rayon pool.
#[derive(Debug, Clone)]
pub struct ParallelScorer {
    method: Method,
    pool: Arc<rayon::ThreadPool>,
}

impl ParallelScorer {
    /// `threads == 0` lets rayon pick the number of threads.
    pub fn new(method: Method, threads: usize) -> Result<Self, rayon::ThreadPoolBuildError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()?;
        Ok(Self {
            method,
            pool: Arc::new(pool),
        })
    }

    pub fn method(&self) -> &Method {
        &self.method
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }

    /// Parallel counterpart of [`ach_core::depth_report`].
    pub fn report(
        &self,
        batch: &CurveBatch,
        queries: &CurveBatch,
        config: &DepthConfig,
    ) -> ach_core::Result<DepthReport> {
        let depths = self
            .pool
            .install(|| score_ach(batch, queries.curves(), config))?;
        Ok(DepthReport::new(
            *config,
            queries.ids().map(String::from).collect(),
            depths,
        ))
    }
}

fn score_ach(
    batch: &CurveBatch,
    queries: &[SampledCurve],
    config: &DepthConfig,
) -> ach_core::Result<Vec<f64>> {
    let reference = Reference::new(batch);
    config.validate(reference.len())?;
    let rings: Vec<_> = queries.par_iter().map(curve_ring).collect();
    match config.estimator {
        Estimator::Exact => rings
            .par_iter()
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
            let k = config.draws_for(reference.len()) as u64;
            let draws: Vec<_> = (0..k)
                .into_par_iter()
                .map_init(HullScratch::new, |s, i| spec.draw(&reference, i, s))
                .collect();
            let plan = McPlan::from_draws(draws);
            Ok(rings
                .par_iter()
                .map_init(HullScratch::new, |s, r| plan.depth(&reference, r, s))
                .collect())
        }
    }
}

impl Scorer for ParallelScorer {
    fn name(&self) -> &str {
        self.method.name()
    }

    fn score(
        &self,
        reference: &CurveBatch,
        queries: &[SampledCurve],
        seed: u64,
    ) -> ach_core::Result<Vec<f64>> {
        match &self.method {
            Method::Ach(cfg) => {
                let cfg = DepthConfig { seed, ..*cfg };
                self.pool.install(|| score_ach(reference, queries, &cfg))
            }
            Method::IntegratedBaseline => self.pool.install(|| {
                queries
                    .par_iter()
                    .map(|q| depth::integrated_baseline_depth(reference, q))
                    .collect()
            }),
        }
    }
}
