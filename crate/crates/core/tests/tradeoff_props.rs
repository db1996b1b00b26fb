mod common;

use common::arb_measured_circuit;
use hetec_core::cost::ArchitectureConfig;
use hetec_core::tradeoff::{compare, homogeneous_run, min_distance_for_target, TradeoffReport};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn tighter_targets_need_larger_distances(c in arb_measured_circuit(4, 20), a in -14.0f64..-4.0, b in -14.0f64..-4.0) {
        let base = ArchitectureConfig::default();
        let (loose, tight) = if a > b { (10f64.powf(a), 10f64.powf(b)) } else { (10f64.powf(b), 10f64.powf(a)) };
        let d_loose = min_distance_for_target(&c, 1e-3, loose, &base).unwrap();
        let d_tight = min_distance_for_target(&c, 1e-3, tight, &base).unwrap();
        prop_assert!(d_loose <= d_tight);
        prop_assert!(d_tight % 2 == 1 && d_tight >= 3);
        // minimality: the chosen distance meets the target and the one below does not
        let run = homogeneous_run(&c, d_tight, 1e-3, &base).unwrap();
        prop_assert!(run.breakdown.total <= tight);
        if d_tight > 3 {
            prop_assert!(homogeneous_run(&c, d_tight - 2, 1e-3, &base).unwrap().breakdown.total > tight);
        }
    }

    #[test]
    fn report_ratios_are_consistent(q_het in 1usize..100_000, q_homog in 1usize..100_000, t_het in 1u64..1_000_000, t_homog in 1u64..1_000_000) {
        let r = TradeoffReport::from_counts(1e-6, 13, q_het, q_homog, t_het, t_homog);
        prop_assert!((r.r_qub * r.r_qub_improvement - 1.0).abs() < 1e-12);
        prop_assert!((r.r_time * r.slowdown - 1.0).abs() < 1e-12);
        prop_assert!((r.r_time * t_het as f64 - t_homog as f64).abs() <= 1e-9 * t_homog as f64);
    }

    #[test]
    fn comparison_reports_matching_error(c in arb_measured_circuit(6, 30), seed in any::<u64>()) {
        let arch = ArchitectureConfig::default();
        let r = compare(&c, &arch, seed).unwrap();
        prop_assert!(r.e_homog <= r.e_target || r.e_target == 0.0 && r.e_homog == 0.0);
    }
}

#[test]
fn identical_counts_give_unit_ratios() {
    let r = TradeoffReport::from_counts(1e-6, 13, 1355, 1355, 100, 100);
    assert_eq!((r.r_qub, r.r_qub_improvement, r.r_time, r.slowdown), (1.0, 1.0, 1.0, 1.0));
}
