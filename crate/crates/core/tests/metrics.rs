mod common;

use common::*;
use cwth::metrics::{auc_roc, energy_score, LabeledScores};
use cwth::wavelet::{cwth_strided, make_scale_grid, MorletParams};
use proptest::prelude::*;

fn scores_strategy() -> impl Strategy<Value = (Vec<f64>, Vec<bool>)> {
    (2usize..200).prop_flat_map(|n| {
        (
            // coarse values force plenty of ties
            prop::collection::vec((0i32..25).prop_map(|v| v as f64 * 0.1), n),
            prop::collection::vec(any::<bool>(), n),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn auc_equals_pairwise_enumeration((scores, labels) in scores_strategy()) {
        let data = LabeledScores::new(scores.clone(), labels.clone()).unwrap();
        let has_both = labels.iter().any(|&l| l) && labels.iter().any(|&l| !l);
        match auc_roc(&data) {
            Ok(v) => {
                prop_assert!(has_both);
                prop_assert_eq!(v, pairwise_auc(&scores, &labels));
            }
            Err(_) => prop_assert!(!has_both),
        }
    }

    #[test]
    fn auc_invariant_under_increasing_maps((scores, labels) in scores_strategy()) {
        prop_assume!(labels.iter().any(|&l| l) && labels.iter().any(|&l| !l));
        let base = auc_roc(&LabeledScores::new(scores.clone(), labels.clone()).unwrap()).unwrap();
        let warped: Vec<f64> = scores.iter().map(|s| (3.0 * s).exp() - 7.0).collect();
        let w = auc_roc(&LabeledScores::new(warped, labels).unwrap()).unwrap();
        prop_assert_eq!(base, w);
    }

    #[test]
    fn negated_scores_complement(n in 2usize..100, seed in any::<u64>()) {
        use rand::Rng;
        let mut r = rng(seed);
        let scores: Vec<f64> = (0..n).map(|_| r.random::<f64>()).collect();
        let labels: Vec<bool> = (0..n).map(|i| i % 2 == 0).collect();
        let neg: Vec<f64> = scores.iter().map(|s| -s).collect();
        let a = auc_roc(&LabeledScores::new(scores, labels.clone()).unwrap()).unwrap();
        let b = auc_roc(&LabeledScores::new(neg, labels).unwrap()).unwrap();
        prop_assert!((a + b - 1.0).abs() < 1e-12);
    }
}

#[test]
fn energy_scales_with_square_of_gain() {
    let p = MorletParams::default();
    let g = make_scale_grid(100.0, 6000.0, 8, RATE, &p).unwrap();
    let x = noise_signal(3000, 77);
    let e1 = energy_score(&cwth_strided(&x, &g, &p, 16).unwrap());
    let e2 = energy_score(&cwth_strided(&x.scaled(2.0), &g, &p, 16).unwrap());
    assert!(e1 > 0.0);
    assert!((e2 / e1 - 4.0).abs() < 1e-12);
}
