//! Seeded synthetic curve batches and anomaly injectors.
//!
//! Two families are provided: geometric Brownian motion segments and random
//! sinusoids `a cos(2πt) + b sin(2πt)`. Every curve `i` draws from its own
//! counter-based stream, so a batch is a pure function of its [`GenSpec`].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::curves::{uniform_grid, CurveBatch, SampledCurve};
use crate::error::{Error, Result};
use crate::rng::{self, Domain};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GenKind {
    /// `X_t = x0 exp((mu - sigma²/2) t + sigma W_t)`.
    Gbm { mu: f64, sigma: f64, x0: f64 },
    /// `a cos(2πt) + b sin(2πt)` with `a, b ~ U[lo, hi]`.
    Sinusoid { lo: f64, hi: f64 },
}

impl GenKind {
    /// Drift 2, variance 0.5, start 1.
    pub fn default_gbm() -> Self {
        GenKind::Gbm {
            mu: 2.0,
            sigma: libm::sqrt(0.5),
            x0: 1.0,
        }
    }

    /// Coefficients uniform on `[0, 0.05]`.
    pub fn default_sinusoid() -> Self {
        GenKind::Sinusoid { lo: 0.0, hi: 0.05 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    pub p: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(kind: GenKind, n: usize, p: usize, seed: u64) -> Self {
        Self { kind, n, p, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter(
                "curve count n must be at least 1".into(),
            ));
        }
        if self.p < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid size p must be at least 2, got {}",
                self.p
            )));
        }
        match self.kind {
            GenKind::Gbm { mu, sigma, x0 } => {
                if !(mu.is_finite() && sigma.is_finite() && x0.is_finite()) || sigma < 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "gbm needs finite mu, x0 and sigma >= 0 (mu={mu}, sigma={sigma}, x0={x0})"
                    )));
                }
            }
            GenKind::Sinusoid { lo, hi } => {
                if !(lo.is_finite() && hi.is_finite()) || lo > hi {
                    return Err(Error::InvalidParameter(format!(
                        "sinusoid range [{lo}, {hi}] is invalid"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn generate(&self) -> Result<CurveBatch> {
        match self.kind {
            GenKind::Gbm { .. } => gen_gbm(self),
            GenKind::Sinusoid { .. } => gen_sinusoid(self),
        }
    }
}

fn curve_id(i: usize) -> String {
    format!("c{i:04}")
}

/// `(cos 2πt, sin 2πt)`, exact at quarter turns.
pub fn cos_sin_turns(t: f64) -> (f64, f64) {
    let quarters = 4.0 * t;
    if quarters == libm::round(quarters) {
        match (quarters as i64).rem_euclid(4) {
            0 => return (1.0, 0.0),
            1 => return (0.0, 1.0),
            2 => return (-1.0, 0.0),
            _ => return (0.0, -1.0),
        }
    }
    let angle = 2.0 * core::f64::consts::PI * t;
    (libm::cos(angle), libm::sin(angle))
}

/// Geometric Brownian motion paths on the uniform `p`-grid.
pub fn gen_gbm(spec: &GenSpec) -> Result<CurveBatch> {
    spec.validate()?;
    let GenKind::Gbm { mu, sigma, x0 } = spec.kind else {
        return Err(Error::InvalidParameter("gen_gbm needs a gbm spec".into()));
    };
    let grid = uniform_grid(spec.p);
    let drift = mu - 0.5 * sigma * sigma;
    let curves = (0..spec.n)
        .map(|i| {
            let mut rng = rng::stream(spec.seed, Domain::Curves, i as u64);
            let mut w = 0.0;
            let mut values = Vec::with_capacity(spec.p);
            values.push(x0);
            for k in 1..spec.p {
                let z: f64 = rng.sample(StandardNormal);
                w += libm::sqrt(grid[k] - grid[k - 1]) * z;
                values.push(x0 * libm::exp(drift * grid[k] + sigma * w));
            }
            SampledCurve::new(curve_id(i), grid.clone(), values)
        })
        .collect::<Result<Vec<_>>>()?;
    CurveBatch::new(curves)
}

/// Random sinusoids on the uniform `p`-grid.
pub fn gen_sinusoid(spec: &GenSpec) -> Result<CurveBatch> {
    spec.validate()?;
    let GenKind::Sinusoid { lo, hi } = spec.kind else {
        return Err(Error::InvalidParameter(
            "gen_sinusoid needs a sinusoid spec".into(),
        ));
    };
    let grid = uniform_grid(spec.p);
    let trig: Vec<(f64, f64)> = grid.iter().map(|&t| cos_sin_turns(t)).collect();
    let curves = (0..spec.n)
        .map(|i| {
            let mut rng = rng::stream(spec.seed, Domain::Curves, i as u64);
            let a = lo + (hi - lo) * rng.random::<f64>();
            let b = lo + (hi - lo) * rng.random::<f64>();
            let values = trig.iter().map(|&(c, s)| a * c + b * s).collect();
            SampledCurve::new(curve_id(i), grid.clone(), values)
        })
        .collect::<Result<Vec<_>>>()?;
    CurveBatch::new(curves)
}

/// How an anomalous curve is derived from a clean one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnomalyKind {
    /// `x + a x`, `a ~ U[a_lo, a_hi]`.
    LocationScale { a_lo: f64, a_hi: f64 },
    /// `+ b` at one knot, `b ~ U[b_lo, b_hi]`, knot nearest to `t0 ~ U[0, 1]`.
    IsolatedPeak { b_lo: f64, b_hi: f64 },
    /// `+ amp cos(2πft) + amp sin(2πft)`, `f` uniform on `{f_lo, ..., f_hi}`.
    ShapeOscillation {
        amplitude: f64,
        f_lo: u32,
        f_hi: u32,
    },
    /// `e x`, `e ~ U[e_lo, e_hi]`.
    AmplitudeScale { e_lo: f64, e_hi: f64 },
}

impl AnomalyKind {
    pub fn location() -> Self {
        AnomalyKind::LocationScale {
            a_lo: 0.0,
            a_hi: 1.0,
        }
    }

    pub fn isolated() -> Self {
        AnomalyKind::IsolatedPeak {
            b_lo: 0.03,
            b_hi: 0.06,
        }
    }

    pub fn shape() -> Self {
        AnomalyKind::ShapeOscillation {
            amplitude: 0.01,
            f_lo: 1,
            f_hi: 10,
        }
    }

    pub fn amplitude() -> Self {
        AnomalyKind::AmplitudeScale {
            e_lo: 1.0,
            e_hi: 2.0,
        }
    }

    /// The same family with its random parameter pinned to `severity`.
    pub fn at_severity(&self, severity: f64) -> Self {
        match *self {
            AnomalyKind::LocationScale { .. } => AnomalyKind::LocationScale {
                a_lo: severity,
                a_hi: severity,
            },
            AnomalyKind::IsolatedPeak { .. } => AnomalyKind::IsolatedPeak {
                b_lo: severity,
                b_hi: severity,
            },
            AnomalyKind::ShapeOscillation { f_lo, f_hi, .. } => AnomalyKind::ShapeOscillation {
                amplitude: severity,
                f_lo,
                f_hi,
            },
            AnomalyKind::AmplitudeScale { .. } => AnomalyKind::AmplitudeScale {
                e_lo: severity,
                e_hi: severity,
            },
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            AnomalyKind::LocationScale { .. } => "location",
            AnomalyKind::IsolatedPeak { .. } => "isolated",
            AnomalyKind::ShapeOscillation { .. } => "shape",
            AnomalyKind::AmplitudeScale { .. } => "amplitude",
        }
    }

    fn validate(&self) -> Result<()> {
        let range = |lo: f64, hi: f64, what: &str| {
            if lo.is_finite() && hi.is_finite() && lo <= hi {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{what} range [{lo}, {hi}] is invalid"
                )))
            }
        };
        match *self {
            AnomalyKind::LocationScale { a_lo, a_hi } => range(a_lo, a_hi, "location a"),
            AnomalyKind::IsolatedPeak { b_lo, b_hi } => range(b_lo, b_hi, "peak b"),
            AnomalyKind::ShapeOscillation {
                amplitude,
                f_lo,
                f_hi,
            } => {
                range(f_lo as f64, f_hi as f64, "frequency")?;
                range(amplitude, amplitude, "amplitude")
            }
            AnomalyKind::AmplitudeScale { e_lo, e_hi } => range(e_lo, e_hi, "scale e"),
        }
    }

    /// Applies the transform to `c` with parameters drawn from `rng`.
    pub fn apply<R: Rng>(&self, c: &SampledCurve, rng: &mut R) -> Result<SampledCurve> {
        let uniform = |rng: &mut R, lo: f64, hi: f64| lo + (hi - lo) * rng.random::<f64>();
        match *self {
            AnomalyKind::LocationScale { a_lo, a_hi } => {
                let a = uniform(rng, a_lo, a_hi);
                c.map_values(|_, v| v + a * v)
            }
            AnomalyKind::IsolatedPeak { b_lo, b_hi } => {
                let t0: f64 = rng.random();
                let b = uniform(rng, b_lo, b_hi);
                let knot = nearest_knot(c.times(), t0);
                let mut k = 0;
                c.map_values(|_, v| {
                    let out = if k == knot { v + b } else { v };
                    k += 1;
                    out
                })
            }
            AnomalyKind::ShapeOscillation {
                amplitude,
                f_lo,
                f_hi,
            } => {
                let f = rng.random_range(f_lo..=f_hi) as f64;
                c.map_values(|t, v| {
                    let (cs, sn) = cos_sin_turns(t * f);
                    v + amplitude * cs + amplitude * sn
                })
            }
            AnomalyKind::AmplitudeScale { e_lo, e_hi } => {
                let e = uniform(rng, e_lo, e_hi);
                c.map_values(|_, v| e * v)
            }
        }
    }
}

fn nearest_knot(times: &[f64], t0: f64) -> usize {
    let mut best = 0;
    for (k, &t) in times.iter().enumerate() {
        if (t - t0).abs() < (times[best] - t0).abs() {
            best = k;
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Contamination {
    /// `⌊α n⌋` curves.
    Fraction(f64),
    /// Exactly this many curves.
    Count(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnomalySpec {
    pub kind: AnomalyKind,
    pub contamination: Contamination,
    pub seed: u64,
}

impl AnomalySpec {
    pub fn new(kind: AnomalyKind, contamination: Contamination, seed: u64) -> Self {
        Self {
            kind,
            contamination,
            seed,
        }
    }

    /// Number of curves to alter in a batch of `n`.
    pub fn count(&self, n: usize) -> Result<usize> {
        match self.contamination {
            Contamination::Fraction(alpha) => {
                if !(0.0..=1.0).contains(&alpha) {
                    return Err(Error::InvalidParameter(format!(
                        "contamination fraction {alpha} is outside [0, 1]"
                    )));
                }
                // absorb representation error such as 0.29 * 100 = 28.999...
                Ok((libm::floor(alpha * n as f64 + 1e-9) as usize).min(n))
            }
            Contamination::Count(m) if m <= n => Ok(m),
            Contamination::Count(m) => Err(Error::InvalidParameter(format!(
                "cannot contaminate {m} of {n} curves"
            ))),
        }
    }
}

/// Replaces a seeded random subset of curves by anomalies.
///
/// Returns the new batch (same ids and grids) and per-curve labels marking the
/// altered curves.
pub fn inject(batch: &CurveBatch, spec: &AnomalySpec) -> Result<(CurveBatch, Vec<bool>)> {
    spec.kind.validate()?;
    let n = batch.len();
    let m = spec.count(n)?;
    if m == 0 {
        if !matches!(spec.contamination, Contamination::Fraction(a) if a == 0.0)
            && !matches!(spec.contamination, Contamination::Count(0))
        {
            log::warn!("contamination of {n} curves rounds down to zero anomalies");
        }
        return Ok((batch.clone(), alloc::vec![false; n]));
    }
    let mut select = rng::stream(spec.seed, Domain::Anomalies, 0);
    let chosen = rand::seq::index::sample(&mut select, n, m);
    let mut labels = alloc::vec![false; n];
    for i in chosen.iter() {
        labels[i] = true;
    }
    let curves = batch
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if labels[i] {
                let mut rng = rng::stream(spec.seed, Domain::Anomalies, 1 + i as u64);
                spec.kind.apply(c, &mut rng)
            } else {
                Ok(c.clone())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((CurveBatch::new(curves)?, labels))
}

/// The four fixed query curves `x0..x3` on the uniform `p`-grid: a central
/// curve, a location-scale anomaly, an isolated-peak anomaly and a shape
/// anomaly, built from the injector formulas with fixed parameters.
///
/// Sinusoid family (coefficients on `[lo, hi]`, midpoint `m`):
/// - `x0 = m cos(2πt) + m sin(2πt)`;
/// - `x1 = 2 x0` (location-scale with `a = 1`);
/// - `x2 = x0` plus `(lo + hi)·0.9` at the knot nearest `t = 1/8`, the crest of `x0`;
/// - `x3 = x0 + 0.01 (cos + sin)(2π·8t)` with its amplitude doubled.
///
/// GBM family: `x0` is the median path `x0 e^{(mu - sigma²/2) t}`, `x1 = 2 x0`,
/// `x2` adds a peak of `5` at `t = 0.5`, `x3 = x0 (1 + 0.25 (cos + sin)(2π·8t))`
/// scaled by 1.5.
pub fn reference_queries(kind: &GenKind, p: usize) -> Result<CurveBatch> {
    if p < 2 {
        return Err(Error::InvalidParameter(format!(
            "grid size p must be at least 2, got {p}"
        )));
    }
    let grid = uniform_grid(p);
    let osc = |t: f64| {
        let (c, s) = cos_sin_turns(8.0 * t);
        c + s
    };
    let (center, peak_at, peak, shape): (Vec<f64>, f64, f64, Vec<f64>) = match *kind {
        GenKind::Sinusoid { lo, hi } => {
            let m = 0.5 * (lo + hi);
            let center: Vec<f64> = grid
                .iter()
                .map(|&t| {
                    let (c, s) = cos_sin_turns(t);
                    m * c + m * s
                })
                .collect();
            let shape = grid
                .iter()
                .zip(&center)
                .map(|(&t, &v)| 2.0 * (v + 0.01 * osc(t)))
                .collect();
            (center, 0.125, 0.9 * (lo + hi), shape)
        }
        GenKind::Gbm { mu, sigma, x0 } => {
            let drift = mu - 0.5 * sigma * sigma;
            let center: Vec<f64> = grid.iter().map(|&t| x0 * libm::exp(drift * t)).collect();
            let shape = grid
                .iter()
                .zip(&center)
                .map(|(&t, &v)| 1.5 * v * (1.0 + 0.25 * osc(t)))
                .collect();
            (center, 0.5, 5.0, shape)
        }
    };
    let location = center.iter().map(|v| 2.0 * v).collect();
    let mut isolated = center.clone();
    isolated[nearest_knot(&grid, peak_at)] += peak;
    CurveBatch::new(alloc::vec![
        SampledCurve::new("x0", grid.clone(), center)?,
        SampledCurve::new("x1", grid.clone(), location)?,
        SampledCurve::new("x2", grid.clone(), isolated)?,
        SampledCurve::new("x3", grid, shape)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sin_spec(n: usize, p: usize, seed: u64) -> GenSpec {
        GenSpec::new(GenKind::default_sinusoid(), n, p, seed)
    }

    #[test]
    fn gbm_without_noise_is_exponential() {
        let spec = GenSpec::new(
            GenKind::Gbm {
                mu: 2.0,
                sigma: 0.0,
                x0: 1.5,
            },
            3,
            11,
            9,
        );
        let b = gen_gbm(&spec).unwrap();
        for c in &b {
            for (&t, &v) in c.times().iter().zip(c.values()) {
                assert!((v - 1.5 * libm::exp(2.0 * t)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn gbm_is_positive_and_deterministic() {
        let spec = GenSpec::new(GenKind::default_gbm(), 20, 50, 3);
        let a = gen_gbm(&spec).unwrap();
        assert!(a.iter().all(|c| c.values().iter().all(|&v| v > 0.0)));
        assert_eq!(a, gen_gbm(&spec).unwrap());
        assert_ne!(a, gen_gbm(&GenSpec { seed: 4, ..spec }).unwrap());
    }

    #[test]
    fn sinusoid_zero_range() {
        let spec = GenSpec::new(GenKind::Sinusoid { lo: 0.0, hi: 0.0 }, 4, 9, 1);
        let b = gen_sinusoid(&spec).unwrap();
        assert!(b.iter().all(|c| c.values().iter().all(|&v| v == 0.0)));
    }

    #[test]
    fn sinusoid_quarter_turn_values() {
        let b = gen_sinusoid(&sin_spec(30, 5, 2)).unwrap();
        for c in &b {
            let a = c.values()[0];
            let bb = c.values()[1];
            assert!((0.0..=0.05).contains(&a) && (0.0..=0.05).contains(&bb));
            assert_eq!(c.evaluate_linear(0.0).unwrap(), a);
            assert_eq!(c.evaluate_linear(0.25).unwrap(), bb);
            assert_eq!(c.values()[2], -a);
        }
    }

    #[test]
    fn spec_validation() {
        assert!(GenSpec::new(GenKind::default_gbm(), 0, 10, 0)
            .validate()
            .is_err());
        assert!(GenSpec::new(GenKind::default_gbm(), 1, 1, 0)
            .validate()
            .is_err());
        assert!(GenSpec::new(
            GenKind::Gbm {
                mu: 0.0,
                sigma: -1.0,
                x0: 1.0
            },
            1,
            5,
            0
        )
        .validate()
        .is_err());
        assert!(
            GenSpec::new(GenKind::Sinusoid { lo: 1.0, hi: 0.0 }, 1, 5, 0)
                .validate()
                .is_err()
        );
    }

    #[test]
    fn zero_fraction_is_identity() {
        let b = gen_sinusoid(&sin_spec(10, 20, 1)).unwrap();
        for kind in [
            AnomalyKind::location(),
            AnomalyKind::isolated(),
            AnomalyKind::shape(),
            AnomalyKind::amplitude(),
        ] {
            let (out, labels) =
                inject(&b, &AnomalySpec::new(kind, Contamination::Fraction(0.0), 5)).unwrap();
            assert_eq!(out, b);
            assert!(labels.iter().all(|l| !l));
        }
    }

    #[test]
    fn isolated_peak_changes_one_knot() {
        let b = gen_sinusoid(&sin_spec(40, 30, 1)).unwrap();
        let (out, labels) = inject(
            &b,
            &AnomalySpec::new(AnomalyKind::isolated(), Contamination::Fraction(0.25), 8),
        )
        .unwrap();
        assert_eq!(labels.iter().filter(|&&l| l).count(), 10);
        for ((orig, new), &l) in b.iter().zip(&out).zip(&labels) {
            let changed: Vec<f64> = orig
                .values()
                .iter()
                .zip(new.values())
                .filter(|(a, b)| a != b)
                .map(|(a, b)| b - a)
                .collect();
            if l {
                assert_eq!(changed.len(), 1);
                assert!(changed[0] >= 0.03 - 1e-12 && changed[0] <= 0.06 + 1e-12);
            } else {
                assert!(changed.is_empty());
            }
            assert_eq!(orig.times(), new.times());
            assert_eq!(orig.id(), new.id());
        }
    }

    #[test]
    fn location_with_unit_factor_doubles() {
        let b = gen_gbm(&GenSpec::new(GenKind::default_gbm(), 10, 20, 4)).unwrap();
        let kind = AnomalyKind::LocationScale {
            a_lo: 1.0,
            a_hi: 1.0,
        };
        let (out, labels) =
            inject(&b, &AnomalySpec::new(kind, Contamination::Count(3), 2)).unwrap();
        for ((o, n), &l) in b.iter().zip(&out).zip(&labels) {
            for (&a, &c) in o.values().iter().zip(n.values()) {
                assert_eq!(c, if l { 2.0 * a } else { a });
            }
        }
    }

    #[test]
    fn shape_oscillation_frequency_range() {
        let b = gen_sinusoid(&sin_spec(20, 200, 1)).unwrap();
        let (out, labels) = inject(
            &b,
            &AnomalySpec::new(AnomalyKind::shape(), Contamination::Fraction(0.5), 3),
        )
        .unwrap();
        for ((o, n), &l) in b.iter().zip(&out).zip(&labels) {
            let max_diff = o
                .values()
                .iter()
                .zip(n.values())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            if l {
                // 0.01 (cos + sin) peaks at 0.01·√2
                assert!(max_diff > 0.012 && max_diff <= 0.01 * core::f64::consts::SQRT_2 + 1e-12);
            } else {
                assert_eq!(max_diff, 0.0);
            }
        }
    }

    #[test]
    fn fraction_counts_and_rounding() {
        let spec = |a| AnomalySpec::new(AnomalyKind::location(), Contamination::Fraction(a), 0);
        assert_eq!(spec(0.3).count(100).unwrap(), 30);
        assert_eq!(spec(0.29).count(100).unwrap(), 29);
        assert_eq!(spec(0.05).count(10).unwrap(), 0);
        assert!(spec(1.5).count(10).is_err());
        let b = gen_sinusoid(&sin_spec(10, 5, 1)).unwrap();
        let (_, labels) = inject(&b, &spec(0.05)).unwrap();
        assert!(labels.iter().all(|l| !l));
    }

    #[test]
    fn injection_is_deterministic() {
        let b = gen_gbm(&GenSpec::new(GenKind::default_gbm(), 30, 25, 1)).unwrap();
        let s = AnomalySpec::new(AnomalyKind::amplitude(), Contamination::Fraction(0.2), 77);
        assert_eq!(inject(&b, &s).unwrap(), inject(&b, &s).unwrap());
    }

    #[test]
    fn queries_are_fixed() {
        let a = reference_queries(&GenKind::default_sinusoid(), 100).unwrap();
        assert_eq!(
            a,
            reference_queries(&GenKind::default_sinusoid(), 100).unwrap()
        );
        assert_eq!(a.ids().collect::<Vec<_>>(), ["x0", "x1", "x2", "x3"]);
        let g = reference_queries(&GenKind::default_gbm(), 50).unwrap();
        assert_eq!(g.len(), 4);
    }
}
