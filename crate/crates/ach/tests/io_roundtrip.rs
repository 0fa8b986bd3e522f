use std::path::Path;

use ach::io::{read_curves, read_curves_from, write_curves, write_curves_to, Rescale};
use ach_core::{CurveBatch, GenKind, GenSpec, SampledCurve};
use proptest::prelude::*;

fn batch_strategy() -> impl Strategy<Value = CurveBatch> {
    let curve = (
        prop::collection::vec(0.0f64..1.0, 0..8),
        prop::collection::vec(-1e6f64..1e6, 10),
    );
    prop::collection::vec(curve, 1..5).prop_map(|cs| {
        let curves = cs
            .into_iter()
            .enumerate()
            .map(|(i, (mut inner, vals))| {
                inner.retain(|&t| t > 0.0 && t < 1.0);
                inner.sort_by(|a, b| a.partial_cmp(b).unwrap());
                inner.dedup();
                let mut times = vec![0.0];
                times.extend(inner);
                times.push(1.0);
                let values = vals.into_iter().cycle().take(times.len()).collect();
                SampledCurve::new(format!("curve {i}"), times, values).unwrap()
            })
            .collect();
        CurveBatch::new(curves).unwrap()
    })
}

proptest! {
    #[test]
    fn write_then_read_is_lossless(batch in batch_strategy()) {
        let mut buf = Vec::new();
        write_curves_to(&batch, &mut buf).unwrap();
        let back = read_curves_from(buf.as_slice(), Rescale::None, Path::new("<mem>")).unwrap();
        prop_assert_eq!(back, batch);
    }
}

#[test]
fn file_round_trip_of_generated_batch() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.csv");
    let batch = GenSpec::new(GenKind::default_gbm(), 7, 33, 1)
        .generate()
        .unwrap();
    write_curves(&batch, &path).unwrap();
    assert_eq!(read_curves(&path, Rescale::None).unwrap(), batch);
}

#[test]
fn ids_with_commas_and_quotes_survive() {
    let c = SampledCurve::new("a,\"b\"", vec![0.0, 1.0], vec![1.0, 2.0]).unwrap();
    let batch = CurveBatch::new(vec![c]).unwrap();
    let mut buf = Vec::new();
    write_curves_to(&batch, &mut buf).unwrap();
    let back = read_curves_from(buf.as_slice(), Rescale::None, Path::new("<mem>")).unwrap();
    assert_eq!(back, batch);
}
