use ach_core::depth::{score_queries, DepthConfig};
use ach_core::synthdata::reference_queries;
use ach_core::{
    averaged_exact_depth, exact_depth, mc_depth, population_depth, CurveBatch,
    DiscreteCurveDistribution, GenKind, GenSpec, SampledCurve,
};
use proptest::prelude::*;

fn tent_grid() -> Vec<f64> {
    (0..=20).map(|i| i as f64 / 20.0).collect()
}

fn curve(id: &str, f: impl Fn(f64) -> f64) -> SampledCurve {
    let times = tent_grid();
    let values = times.iter().map(|&t| f(t)).collect();
    SampledCurve::new(id, times, values).unwrap()
}

fn constant(id: &str, v: f64) -> SampledCurve {
    curve(id, move |_| v)
}

fn bump(t: f64) -> f64 {
    if (0.4..=0.5).contains(&t) {
        10.0 * t - 4.0
    } else if (0.5..=0.6).contains(&t) {
        -10.0 * t + 6.0
    } else {
        0.0
    }
}

fn zigzag(t: f64) -> f64 {
    if t <= 0.25 {
        -2.0 * t + 1.0
    } else if t <= 0.5 {
        2.0 * t
    } else if t <= 0.75 {
        -2.0 * t + 2.0
    } else {
        2.0 * t - 1.0
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12
}

#[test]
fn population_depth_of_two_constants() {
    let p =
        DiscreteCurveDistribution::uniform(vec![constant("a", 1.0), constant("b", 2.0)]).unwrap();
    let d = population_depth(&p, &constant("x", 0.0), 2, true).unwrap();
    assert!(close(d, 1.0 / 8.0), "{d}");
}

#[test]
fn shifting_by_a_function_changes_the_depth() {
    let p = DiscreteCurveDistribution::uniform(vec![
        curve("a", |t| 1.0 + bump(t)),
        curve("b", |t| 2.0 + bump(t)),
    ])
    .unwrap();
    let d = population_depth(&p, &curve("x", bump), 2, true).unwrap();
    // j=1: (1/2)(1/3) + (1/2)(1/5); j=2: (1/4)(1/3) + (1/4)(1/5) + (1/2)(3/5).
    assert!(close(d, 21.0 / 60.0), "{d}");
}

#[test]
fn symmetric_law_with_deeper_off_center_point() {
    let p =
        DiscreteCurveDistribution::uniform(vec![curve("y1", zigzag), curve("y2", |t| -zigzag(t))])
            .unwrap();
    let center = population_depth(&p, &constant("z", 0.0), 2, true).unwrap();
    let y1 = population_depth(&p, &curve("q", zigzag), 2, true).unwrap();
    assert!(close(center, 17.0 / 32.0), "{center}");
    assert!(close(y1, 89.0 / 128.0), "{y1}");
    assert!(center < y1);
}

#[test]
fn depth_not_decreasing_along_rays_from_the_deepest_point() {
    let atoms = vec![constant("0", 0.0), constant("1", 1.0), constant("-1", -1.0)];
    let p = DiscreteCurveDistribution::uniform(atoms).unwrap();
    let z = population_depth(&p, &constant("z", 0.0), 2, true).unwrap();
    let y = population_depth(&p, &constant("y", 1.5), 2, true).unwrap();
    let x = population_depth(
        &p,
        &curve("x", |t| if t <= 0.5 { 4.0 * t } else { 4.0 - 4.0 * t }),
        2,
        true,
    )
    .unwrap();
    assert!(close(z, 5.0 / 9.0), "{z}");
    assert!(close(y, 28.0 / 135.0), "{y}");
    assert!(close(x, 59.0 / 270.0), "{x}");
    assert!(x > y);
}

#[test]
fn exact_statistic_approaches_population_under_replication() {
    let atoms = [constant("0", 0.0), constant("1", 1.0), constant("-1", -1.0)];
    let p = DiscreteCurveDistribution::uniform(atoms.to_vec()).unwrap();
    let q = constant("y", 1.5);
    let target = population_depth(&p, &q, 2, true).unwrap();
    let gaps: Vec<f64> = [1usize, 10, 100]
        .iter()
        .map(|&r| {
            let reps = (0..r)
                .flat_map(|k| {
                    atoms
                        .iter()
                        .map(move |a| a.clone().with_id(format!("{}-{k}", a.id())))
                })
                .collect();
            let b = CurveBatch::new(reps).unwrap();
            (averaged_exact_depth(&b, &q, 2).unwrap() - target).abs()
        })
        .collect();
    assert!(gaps[1] < gaps[0] && gaps[2] < gaps[1], "{gaps:?}");
    assert!(gaps[2] < 2e-3, "{gaps:?}");
}

fn sinusoids(n: usize, seed: u64) -> CurveBatch {
    GenSpec::new(GenKind::default_sinusoid(), n, 50, seed)
        .generate()
        .unwrap()
}

#[test]
fn averaged_depth_grows_with_degree() {
    let b = sinusoids(25, 4);
    let qs = reference_queries(&GenKind::default_sinusoid(), 50).unwrap();
    for q in &qs {
        let d: Vec<f64> = (1..=3)
            .map(|j| averaged_exact_depth(&b, q, j).unwrap())
            .collect();
        assert!(d[0] <= d[1] && d[1] <= d[2], "{}: {d:?}", q.id());
        let plain: Vec<f64> = (1..=3).map(|j| exact_depth(&b, q, j).unwrap()).collect();
        assert!(
            plain[0] <= plain[1] && plain[1] <= plain[2],
            "{}: {plain:?}",
            q.id()
        );
    }
}

#[test]
fn monte_carlo_error_shrinks_with_draws() {
    let b = sinusoids(20, 9);
    let qs = reference_queries(&GenKind::default_sinusoid(), 50).unwrap();
    let q = &qs.curves()[3];
    let exact = exact_depth(&b, q, 2).unwrap();
    let rmse = |k: usize| {
        let se: f64 = (0..20)
            .map(|s| (mc_depth(&b, q, 2, k, s, false).unwrap() - exact).powi(2))
            .sum();
        (se / 20.0).sqrt()
    };
    let coarse = rmse(20);
    let fine = rmse(2000);
    assert!(fine < coarse / 4.0, "rmse {coarse} -> {fine}");
    assert!(fine < 5e-3);
}

#[test]
fn averaged_monte_carlo_targets_the_weighted_mixture() {
    let b = sinusoids(12, 2);
    let qs = reference_queries(&GenKind::default_sinusoid(), 50).unwrap();
    let q = &qs.curves()[1];
    let w = ach_core::depth::degree_weights(12, 3);
    let mixture: f64 = (1..=3)
        .map(|j| w[j - 1] * exact_depth(&b, q, j).unwrap())
        .sum();
    let mc = mc_depth(&b, q, 3, 100_000, 5, true).unwrap();
    assert!((mc - mixture).abs() < 0.01, "{mc} vs {mixture}");
}

#[test]
fn scoring_is_deterministic_per_seed() {
    let b = sinusoids(30, 1);
    let cfg = DepthConfig::monte_carlo(2, Some(100), 17, true);
    let a = score_queries(&b, b.curves(), &cfg).unwrap();
    let again = score_queries(&b, b.curves(), &cfg).unwrap();
    assert_eq!(a, again);
    let other = score_queries(&b, b.curves(), &DepthConfig { seed: 18, ..cfg }).unwrap();
    assert_ne!(a, other);
}

/// Irregularly sampled curves on `[0, 1]`, some of them constant.
fn random_batch() -> impl Strategy<Value = (Vec<SampledCurve>, SampledCurve)> {
    let one = (
        prop::collection::vec(0.001f64..0.999, 0..10),
        prop::collection::vec(-1e3f64..1e3, 12),
        prop::bool::ANY,
    )
        .prop_map(|(mut inner, vals, flat)| {
            inner.sort_by(|a, b| a.partial_cmp(b).unwrap());
            inner.dedup();
            let mut times = vec![0.0];
            times.extend(inner);
            times.push(1.0);
            let values = (0..times.len())
                .map(|k| if flat { 1.0 } else { vals[k] })
                .collect::<Vec<_>>();
            (times, values)
        });
    (prop::collection::vec(one.clone(), 1..6), one).prop_map(|(refs, (qt, qv))| {
        let refs = refs
            .into_iter()
            .enumerate()
            .map(|(i, (t, v))| SampledCurve::new(format!("r{i}"), t, v).unwrap())
            .collect();
        (refs, SampledCurve::new("q", qt, qv).unwrap())
    })
}

proptest! {
    #[test]
    fn depth_values_stay_in_unit_interval((refs, q) in random_batch(), j in 1usize..4, seed in 0u64..1000) {
        let b = CurveBatch::new(refs).unwrap();
        let j = j.min(b.len());
        for d in [
            exact_depth(&b, &q, j).unwrap(),
            averaged_exact_depth(&b, &q, j).unwrap(),
            mc_depth(&b, &q, j, 30, seed, true).unwrap(),
            ach_core::integrated_baseline_depth(&b, &q).unwrap(),
        ] {
            prop_assert!((0.0..=1.0).contains(&d), "{d}");
        }
    }

    #[test]
    fn affine_maps_with_negative_slope_keep_depth((refs, q) in random_batch(), a in -5.0f64..-0.2, c in -10.0f64..10.0) {
        let b = CurveBatch::new(refs).unwrap();
        let map = |x: &SampledCurve| x.map_values(|_, v| a * v + c).unwrap();
        let mapped = CurveBatch::new(b.iter().map(map).collect()).unwrap();
        let j = 2.min(b.len());
        let before = averaged_exact_depth(&b, &q, j).unwrap();
        let after = averaged_exact_depth(&mapped, &map(&q), j).unwrap();
        prop_assert!((before - after).abs() <= 1e-9, "{before} vs {after}");
    }
}
