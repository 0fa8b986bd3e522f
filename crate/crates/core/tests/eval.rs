use ach_core::eval::{detected_count, Ranking};
use ach_core::{kendall_tau_distance, portion_detected};
use proptest::prelude::*;

fn ranking(order: &[usize]) -> Ranking {
    Ranking::new(order.iter().map(|i| format!("c{i}")).collect()).unwrap()
}

/// Pairwise-disagreement count by the definition.
fn naive_distance(a: &[usize], b: &[usize]) -> f64 {
    let n = a.len();
    let pos = |o: &[usize]| {
        let mut p = vec![0; n];
        for (k, &i) in o.iter().enumerate() {
            p[i] = k;
        }
        p
    };
    let (pa, pb) = (pos(a), pos(b));
    let mut bad = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            if (pa[i] as i64 - pa[j] as i64) * (pb[i] as i64 - pb[j] as i64) < 0 {
                bad += 1;
            }
        }
    }
    bad as f64 / (n * (n - 1) / 2) as f64
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn merge_count_matches_definition((a, b) in (2usize..40).prop_flat_map(|n| (permutation(n), permutation(n)))) {
        let d = kendall_tau_distance(&ranking(&a), &ranking(&b)).unwrap();
        prop_assert!((d - naive_distance(&a, &b)).abs() < 1e-15);
        prop_assert!((0.0..=1.0).contains(&d));
    }
}

#[test]
fn extremes_and_errors() {
    let id = ranking(&[0, 1, 2, 3]);
    assert_eq!(kendall_tau_distance(&id, &id).unwrap(), 0.0);
    assert_eq!(
        kendall_tau_distance(&id, &ranking(&[3, 2, 1, 0])).unwrap(),
        1.0
    );
    assert!(kendall_tau_distance(&id, &ranking(&[0, 1, 2])).is_err());
    assert!(Ranking::new(vec!["a".into(), "a".into()]).is_err());
}

#[test]
fn detection_counts() {
    let scores = [0.9, 0.1, 0.5, 0.2, 0.8];
    let labels = [false, true, false, true, true];
    assert_eq!(detected_count(&scores, &labels, 2).unwrap(), 2);
    assert_eq!(detected_count(&scores, &labels, 3).unwrap(), 2);
    assert!((portion_detected(&scores, &labels, 3).unwrap() - 2.0 / 3.0).abs() < 1e-15);
    assert!(portion_detected(&scores, &[false; 5], 2).is_err());
}
