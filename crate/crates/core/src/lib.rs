//! Area-of-convex-hull (ACH) statistical depth for sampled curves.
//!
//! A curve is deep with respect to a reference sample when adding its graph to
//! the graphs of a few randomly chosen reference curves barely enlarges the
//! area of their joint convex hull. This crate carries the pure algorithmic
//! part: curve model, planar hulls, exact and Monte-Carlo depth estimators,
//! synthetic data generators, anomaly injectors and the evaluation harnesses.
//!
//! The crate is `no_std` and only needs an allocator. File formats, the CLI and
//! thread-parallel scoring live in the companion `ach` crate.

#![no_std]

extern crate alloc;

pub mod curves;
pub mod depth;
mod error;
pub mod eval;
pub mod geometry;
pub mod rng;
pub mod synthdata;

pub use curves::{CurveBatch, MeshStats, SampledCurve};
pub use depth::{
    ach_ratio, averaged_exact_depth, depth_report, exact_depth, integrated_baseline_depth,
    mc_depth, population_depth, DepthConfig, DepthReport, DiscreteCurveDistribution, Estimator,
    McPlan, Reference,
};
pub use error::{Error, Result};
pub use eval::{kendall_tau_distance, portion_detected, BenchmarkResult, Ranking};
pub use geometry::{convex_hull, hull_area, joint_hull_area, HullPolygon, PlanarPointSet, Point};
pub use synthdata::{AnomalyKind, AnomalySpec, Contamination, GenKind, GenSpec};
