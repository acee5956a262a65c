//! Acceptance suite: one test per criterion, each printing a [PASS] line
//! (run with `--nocapture` to see them). Expected values are frozen from
//! independent oracles: a Taylor-series e² for the constants, exact rational
//! sums for the union bound, full-quantifier brute force for the expansion
//! property, and mask enumeration for the solver.

use std::process::Command;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::One;

use splitlab_core::certified::{matches_to_digits, parse_decimal};
use splitlab_core::digraph::{emit_digraph, min_out_degree, VertexSet};
use splitlab_core::expander::{
    check_property_ii, epsilon, generate_verified, union_bound_sum, ExpanderParams, UnionBound,
};
use splitlab_core::gadgets::{
    audit, exhaustive_lift_check, layer_size, run_lift_fuzz, slack_holds,
    split_neighborhood_gadget, tower_gadget, GadgetAParams, TowerParams,
};
use splitlab_core::generators::{complete_digraph, random_digraph_min_outdeg};
use splitlab_core::reference::{e_squared_taylor, property_ii_brute_force, property_ii_recheck_cap3};
use splitlab_core::solver::{
    exists_split, exists_split_bruteforce, verify_partition, SplitOutcome,
};
use splitlab_core::{Seed, SplitSpec};

fn two() -> BigRational {
    BigRational::from_integer(2.into())
}

#[test]
fn criterion_01_expansion_constants() {
    let start = Instant::now();

    // Oracle: e² from the Taylor series of e, accurate far beyond 30 digits.
    let e2 = e_squared_taylor(40);
    let e2_mid = (e2.lo() + e2.hi()) / two();
    for (k, frozen) in [
        (3u32, "0.0150372536929569657659999438858316"),
        (4, "0.0063438414017162199325312263268352064"),
    ] {
        let kk = BigRational::from_integer((k as u64 * k as u64 * k as u64).into());
        let oracle = BigRational::from_integer(3.into()) / (&e2_mid * &kk);
        let imp = epsilon(k).unwrap();
        let imp_mid = (imp.lo() + imp.hi()) / two();
        assert!(
            matches_to_digits(&imp_mid, &oracle, 12),
            "epsilon({k}) does not match the Taylor oracle to 12 digits"
        );
        // Independently frozen digits.
        assert!(
            matches_to_digits(&imp_mid, &parse_decimal(frozen), 12),
            "epsilon({k}) does not match frozen digits"
        );
    }

    assert_eq!(layer_size(3, 4).unwrap(), 266);
    assert_eq!(layer_size(3, 5).unwrap(), 332);
    assert_eq!(layer_size(4, 4).unwrap(), 630);

    assert!(start.elapsed() < Duration::from_secs(1), "criterion 1 over time budget");
    println!("[PASS] criterion 1: expansion constants (epsilon to 12 digits, certified layer sizes)");
}

#[test]
fn criterion_02_union_bound_sum() {
    let start = Instant::now();
    let margin = BigRational::new(1.into(), 1_000_000.into());
    for (n, k) in [(1000u32, 3u32), (10_000, 4)] {
        let ub = union_bound_sum(n, k).unwrap();
        let one = BigRational::one();
        assert!(ub.sum < one, "sum >= 1 for n={n} k={k}");
        assert!(&ub.sum + &margin <= one, "margin below 1e-6 for n={n} k={k}");
        // The geometric closed form with this epsilon is exactly 1, and every
        // partial sum stays below its partial geometric bound.
        assert_eq!(UnionBound::majorant(), one);
        let mut partial = BigRational::from_integer(0.into());
        for (idx, term) in ub.terms.iter().enumerate() {
            partial += term;
            assert!(
                partial <= UnionBound::geometric_partial(idx as u32 + 1),
                "partial sum exceeds geometric bound at i={} for n={n} k={k}",
                idx + 1
            );
        }
        assert!(ub.sum <= UnionBound::geometric_partial(ub.cap));
    }
    assert!(start.elapsed() < Duration::from_secs(5), "criterion 2 over time budget");
    println!("[PASS] criterion 2: union-bound sums below 1 with 1e-6 margin and geometric domination");
}

#[test]
fn criterion_03_verified_expander_realization() {
    let start = Instant::now();
    for seed in 0..20u64 {
        let verified = generate_verified(200, 3, Seed(seed), 20)
            .unwrap_or_else(|e| panic!("seed {seed} failed: {e}"));
        assert!(verified.tries() <= 20);
        // Independent quantifier-faithful recheck at the certified cap.
        assert_eq!(verified.params().x_cap(), 3);
        assert!(
            property_ii_recheck_cap3(verified.graph(), verified.params().x_cap()),
            "recheck refuted the verified graph for seed {seed}"
        );
    }
    assert!(start.elapsed() < Duration::from_secs(60), "criterion 3 over time budget");
    println!("[PASS] criterion 3: 20/20 verified k-out graphs at n=200, independent recheck agrees");
}

#[test]
fn criterion_04_equal_size_reduction_soundness() {
    let start = Instant::now();
    let mut disagreements = 0;
    for seed in 0..200u64 {
        let n = 6 + (seed % 7) as u32; // 6..=12
        let g = splitlab_core::expander::sample_k_out(n, 3, Seed(seed)).unwrap();
        // Certified cap (vacuously 0 at these sizes) plus overridden caps
        // that actually exercise the enumeration.
        let certified = ExpanderParams::certified(n, 3).unwrap();
        let fast = check_property_ii(&g, &certified).unwrap().holds;
        if fast != property_ii_brute_force(&g, certified.x_cap()) {
            disagreements += 1;
        }
        for cap in [3u32, 4] {
            let params = ExpanderParams::with_cap(n, 3, cap).unwrap();
            let fast = check_property_ii(&g, &params).unwrap().holds;
            if fast != property_ii_brute_force(&g, cap) {
                disagreements += 1;
            }
        }
    }
    assert_eq!(disagreements, 0, "equal-size reduction disagreed with brute force");
    assert!(start.elapsed() < Duration::from_secs(60), "criterion 4 over time budget");
    println!("[PASS] criterion 4: equal-size reduction matches full-quantifier brute force, 200 samples");
}

#[test]
fn criterion_05_claim_2_to_4_exhaustive() {
    let start = Instant::now();
    let k5 = complete_digraph(5).unwrap();
    let om = split_neighborhood_gadget(&k5, GadgetAParams::new(2).unwrap()).unwrap();
    let ex = exhaustive_lift_check(&om).unwrap();
    assert_eq!(ex.subsets, 1 << 15);
    assert_eq!(ex.level1_violations, 0, "{ex:?}");
    assert_eq!(ex.high_violations, 0, "{ex:?}");
    assert!(ex.level1_checked > 0 && ex.high_checked > 0);
    assert!(start.elapsed() < Duration::from_secs(30), "criterion 5 over time budget");
    println!(
        "[PASS] criterion 5: claim 2-to-4 exhaustive over 2^15 subsets ({} level-1, {} level-2 hypotheses)",
        ex.level1_checked, ex.high_checked
    );
}

#[test]
fn criterion_06_claim_3_to_s_fuzz() {
    let start = Instant::now();
    let base = complete_digraph(267).unwrap();
    let verified = generate_verified(266, 3, Seed(0), 20).unwrap();
    let params = TowerParams::new(4, verified).unwrap();
    assert_eq!(params.d(), 266);
    let om = tower_gadget(&base, &params).unwrap();

    // Degree audit: aux out-degree exactly 3, originals exactly 266, aux
    // subgraph acyclic, size formulas exact.
    let a = audit(&om);
    assert!(a.pass(), "gadget audit failed: {a:?}");
    assert_eq!(a.vertices, 267 + 267 * 266);
    assert_eq!(a.min_out_degree, 3);
    assert!(a.aux_acyclic);

    // The full gadget meets the level-3 hypothesis and lifts to the base,
    // where the complete digraph has out-degree 266 >= s = 4.
    let full = VertexSet::full(om.gadget().n());
    let lift = splitlab_core::gadgets::check_lift_b(&om, &full, 3).unwrap();
    assert!(lift.holds && lift.certified);
    assert_eq!(
        min_out_degree(om.base(), &splitlab_core::gadgets::project(&om, &full)).unwrap(),
        266
    );

    let fuzz = run_lift_fuzz(&om, 3, 200, Seed(1)).unwrap();
    assert!(fuzz.checked >= 50, "only {} non-empty cores", fuzz.checked);
    assert_eq!(fuzz.violations, 0);
    assert!(start.elapsed() < Duration::from_secs(300), "criterion 6 over time budget");
    println!(
        "[PASS] criterion 6: claim 3-to-s fuzz on the 71k-vertex tower, {} cores checked, 0 violations",
        fuzz.checked
    );
}

#[test]
fn criterion_07_gadget_formulas() {
    let start = Instant::now();
    // Split gadgets over 20 random bases.
    for i in 0..20u64 {
        let f = 1 + (i % 3) as u32;
        let delta = f * f;
        let n = delta + 2 + (i % 5) as u32;
        let base = random_digraph_min_outdeg(n, delta, Seed(7000 + i)).unwrap();
        let om = split_neighborhood_gadget(&base, GadgetAParams::new(f).unwrap()).unwrap();
        let a = audit(&om);
        assert!(a.pass(), "split audit failed at i={i}: {a:?}");
        assert_eq!(a.vertices, n as u64 * (1 + f as u64));
        assert_eq!(a.arcs, n as u64 * f as u64 + n as u64 * (f as u64) * (f as u64));
        assert_eq!(a.min_out_degree, f);
    }
    // Tower gadgets over 20 random bases, one verified expander reused.
    let verified = generate_verified(266, 3, Seed(40), 20).unwrap();
    let params = TowerParams::new(4, verified).unwrap();
    for i in 0..20u64 {
        let n = 268 + (i % 8) as u32;
        let base = random_digraph_min_outdeg(n, 266, Seed(8000 + i)).unwrap();
        let om = tower_gadget(&base, &params).unwrap();
        let a = audit(&om);
        assert!(a.pass(), "tower audit failed at i={i}: {a:?}");
        assert_eq!(a.vertices, n as u64 + n as u64 * 266);
        assert_eq!(a.arcs, n as u64 * 266 + n as u64 * 266 * 3);
        assert_eq!(a.min_out_degree, 3);
    }
    assert!(start.elapsed() < Duration::from_secs(120), "criterion 7 over time budget");
    println!("[PASS] criterion 7: size and degree formulas hold on 20 random bases per gadget");
}

#[test]
fn criterion_08_solver_oracle_equivalence() {
    let start = Instant::now();
    let specs = [
        SplitSpec::new(1, 1).unwrap(),
        SplitSpec::new(1, 2).unwrap(),
        SplitSpec::new(2, 1).unwrap(),
        SplitSpec::new(2, 2).unwrap(),
    ];
    for seed in 0..500u64 {
        let n = 4 + (seed % 9) as u32; // 4..=12
        let delta = 1 + (seed % 3).min(n as u64 - 2) as u32;
        let d = random_digraph_min_outdeg(n, delta, Seed(seed)).unwrap();
        let mut found = std::collections::HashMap::new();
        for sp in specs {
            let brute = exists_split_bruteforce(&d, sp).unwrap();
            let bb = exists_split(&d, sp);
            assert_eq!(
                brute.outcome.is_found(),
                bb.outcome.is_found(),
                "oracle disagreement at seed={seed} spec={sp}"
            );
            if let SplitOutcome::Found(w) = &brute.outcome {
                assert!(verify_partition(&d, w), "brute witness fails at seed={seed}");
            }
            if let SplitOutcome::Found(w) = &bb.outcome {
                assert!(verify_partition(&d, w), "search witness fails at seed={seed}");
            }
            found.insert((sp.s(), sp.t()), bb.outcome.is_found());
        }
        // Monotonicity in both thresholds.
        if found[&(2, 2)] {
            assert!(found[&(1, 2)] && found[&(2, 1)] && found[&(1, 1)], "seed={seed}");
        }
        if found[&(1, 2)] || found[&(2, 1)] {
            assert!(found[&(1, 1)], "seed={seed}");
        }
        // (s,t) <-> (t,s) symmetry of the outcome.
        assert_eq!(found[&(1, 2)], found[&(2, 1)], "seed={seed}");
    }
    assert!(start.elapsed() < Duration::from_secs(300), "criterion 8 over time budget");
    println!("[PASS] criterion 8: search matches brute force on 500 instances; monotone and symmetric");
}

#[test]
fn criterion_09_lower_bound_sanity() {
    let start = Instant::now();
    for s in 1..=3u32 {
        for t in 1..=3u32 {
            let spec = SplitSpec::new(s, t).unwrap();
            let tight = complete_digraph(s + t + 1).unwrap();
            let r = exists_split_bruteforce(&tight, spec).unwrap();
            assert!(
                !r.outcome.is_found(),
                "complete digraph on s+t+1 vertices split at ({s},{t})"
            );
            let loose = complete_digraph(s + t + 2).unwrap();
            let r = exists_split_bruteforce(&loose, spec).unwrap();
            match r.outcome {
                SplitOutcome::Found(w) => assert!(verify_partition(&loose, &w)),
                other => panic!("no split on s+t+2 vertices at ({s},{t}): {other:?}"),
            }
        }
    }
    assert!(start.elapsed() < Duration::from_secs(30), "criterion 9 over time budget");
    println!("[PASS] criterion 9: complete digraphs split exactly above the s+t+1 lower bound");
}

#[test]
fn criterion_10_slack_inequality() {
    let start = Instant::now();
    // Every certified TowerParams in the suite enforces the inequality at
    // construction; re-check the one used by the fuzz criterion plus a grid.
    let verified = generate_verified(266, 3, Seed(0), 20).unwrap();
    let params = TowerParams::new(4, verified).unwrap();
    assert!(params.slack_holds());
    for k in 3..=5u32 {
        for s in 4..=8u32 {
            let d = layer_size(k, s).unwrap();
            assert!(slack_holds(s, k, d), "slack failed at k={k} s={s} d={d}");
        }
    }
    assert!(start.elapsed() < Duration::from_secs(30), "criterion 10 over time budget");
    println!("[PASS] criterion 10: s-1 < eps*d under certified arithmetic for all constructed params");
}

fn canonical_report(raw: &str) -> String {
    // Reports are line-delimited JSON; timing fields are excluded from the
    // comparison canon.
    raw.lines()
        .map(|line| {
            let mut v: serde_json::Value = serde_json::from_str(line).expect("report line is JSON");
            if let Some(obj) = v.as_object_mut() {
                obj.remove("elapsed_ms");
            }
            serde_json::to_string(&v).unwrap()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn run_splitlab(args: &[&str]) -> (String, std::process::ExitStatus) {
    let out = Command::new(env!("CARGO_BIN_EXE_splitlab"))
        .args(args)
        .output()
        .expect("binary runs");
    (String::from_utf8(out.stdout).expect("utf-8 report"), out.status)
}

#[test]
fn criterion_11_reproducibility() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let k5_path = dir.path().join("k5.txt");
    std::fs::write(&k5_path, emit_digraph(&complete_digraph(5).unwrap())).unwrap();
    let k5 = k5_path.to_str().unwrap();

    let sweep_args = ["lemma-sweep", "--n", "200", "--k", "3", "--trials", "5", "--seed", "7"];
    let (a, status_a) = run_splitlab(&sweep_args);
    let (b, status_b) = run_splitlab(&sweep_args);
    assert!(status_a.success() && status_b.success());
    assert_eq!(canonical_report(&a), canonical_report(&b), "lemma-sweep reports differ");

    let fuzz_args = [
        "claim-fuzz", "--kind", "a", "--base", k5, "--f", "2", "--trials", "100", "--seed", "3",
    ];
    let (a, status_a) = run_splitlab(&fuzz_args);
    let (b, status_b) = run_splitlab(&fuzz_args);
    assert!(status_a.success() && status_b.success());
    assert_eq!(canonical_report(&a), canonical_report(&b), "claim-fuzz reports differ");

    assert!(start.elapsed() < Duration::from_secs(60), "criterion 11 over time budget");
    println!("[PASS] criterion 11: lemma-sweep and claim-fuzz reports byte-identical across runs");
}

#[test]
fn criterion_06b_projection_sanity_under_level1() {
    // Companion check to the fuzz criterion at level 1: any non-empty core
    // with min out-degree >= 1 must project to a non-empty base set (the
    // auxiliary subgraph is acyclic, so cycles pass through originals).
    let base = complete_digraph(267).unwrap();
    let verified = generate_verified(266, 3, Seed(5), 20).unwrap();
    let params = TowerParams::new(4, verified).unwrap();
    let om = tower_gadget(&base, &params).unwrap();
    let fuzz = run_lift_fuzz(&om, 1, 60, Seed(2)).unwrap();
    assert!(fuzz.checked >= 20);
    assert_eq!(fuzz.violations, 0);
    println!("[PASS] criterion 6 companion: level-1 lifts never produce empty projections");
}

#[test]
fn split_witness_projection_reaches_target_degrees() {
    // End-to-end split-gadget path used by the pipeline: a base of two
    // disjoint complete digraphs makes the gadget (2,1)-splittable, and the
    // projected parts must meet (4,1).
    let mut arcs = Vec::new();
    for block in 0..2u32 {
        let off = block * 5;
        for u in 0..5 {
            for v in 0..5 {
                if u != v {
                    arcs.push((off + u, off + v));
                }
            }
        }
    }
    let base = splitlab_core::Digraph::from_arcs(10, arcs).unwrap();
    let om = split_neighborhood_gadget(&base, GadgetAParams::new(2).unwrap()).unwrap();
    let spec = SplitSpec::new(2, 1).unwrap();
    let result = exists_split(om.gadget(), spec);
    let witness = match result.outcome {
        SplitOutcome::Found(w) => w,
        other => panic!("expected a (2,1)-split of the doubled gadget, got {other:?}"),
    };
    let a = splitlab_core::gadgets::project(&om, witness.a());
    let b = splitlab_core::gadgets::project(&om, witness.b());
    assert!(!a.is_empty() && !b.is_empty());
    assert!(min_out_degree(om.base(), &a).unwrap() >= 4);
    assert!(min_out_degree(om.base(), &b).unwrap() >= 1);
    let full: Vec<u32> = a.union(&b).to_vec();
    assert_eq!(full, (0..10).collect::<Vec<_>>());
    assert_eq!(VertexSet::from_ids(10, a.iter()).intersection(&b).len(), 0);
    println!("[PASS] pipeline companion: projected split witness meets (4,1) on the base");
}
