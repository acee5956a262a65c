//! Heavier randomized cross-checks, skipped by default:
//! `cargo test -p splitlab-core --test stress -- --ignored`

use splitlab_core::expander::{check_property_ii, sample_k_out, ExpanderParams};
use splitlab_core::generators::{random_digraph_min_outdeg, Seed};
use splitlab_core::reference::property_ii_brute_force;
use splitlab_core::solver::{
    exists_split_bruteforce_capped, exists_split_with, verify_partition, SearchOptions,
    SplitOutcome,
};
use splitlab_core::SplitSpec;

#[test]
#[ignore = "heavy randomized sweep"]
fn solver_agrees_with_bruteforce_up_to_n16() {
    let specs: Vec<SplitSpec> = [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3), (3, 3)]
        .into_iter()
        .map(|(s, t)| SplitSpec::new(s, t).unwrap())
        .collect();
    for seed in 0..2000u64 {
        let n = 4 + (seed % 13) as u32; // 4..=16
        let delta = 1 + (seed % 4).min(n as u64 - 2) as u32;
        let d = random_digraph_min_outdeg(n, delta, Seed(seed)).unwrap();
        for &sp in &specs {
            let brute = exists_split_bruteforce_capped(&d, sp, 16).unwrap();
            for prune in [true, false] {
                let bb = exists_split_with(&d, sp, SearchOptions { budget: None, prune });
                assert_eq!(
                    brute.outcome.is_found(),
                    bb.outcome.is_found(),
                    "disagreement at seed={seed} n={n} delta={delta} spec={sp} prune={prune}"
                );
                if let SplitOutcome::Found(w) = &bb.outcome {
                    assert!(verify_partition(&d, w));
                }
            }
        }
    }
}

#[test]
#[ignore = "heavy randomized sweep"]
fn property_check_agrees_with_bruteforce_at_higher_degrees() {
    for seed in 0..400u64 {
        let k = 3 + (seed % 3) as u32; // 3..=5
        let n = (k + 5) + (seed % 8) as u32;
        let g = sample_k_out(n, k, Seed(seed)).unwrap();
        for cap in 3..=5u32 {
            let params = ExpanderParams::with_cap(n, k, cap).unwrap();
            let fast = check_property_ii(&g, &params).unwrap().holds;
            let brute = property_ii_brute_force(&g, cap);
            assert_eq!(fast, brute, "disagreement at seed={seed} n={n} k={k} cap={cap}");
        }
    }
}
