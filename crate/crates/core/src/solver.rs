//! Exact decision procedures for splitting instances: does the vertex set
//! partition into non-empty `A ⊔ B` with `δ+(D[A]) >= s` and
//! `δ+(D[B]) >= t`?
//!
//! Two routes are kept deliberately separate: a mask-enumeration brute force
//! for small graphs (the oracle), and a branch-and-bound over three-way
//! labelings (A / B / undecided) whose pruning uses out-degree cores — the
//! same closure structure the gadget claims manipulate. A bounded-cardinality
//! core search rounds out the module for exploring how strong small induced
//! subgraphs can be.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::digraph::{min_out_degree, out_core, Digraph, SplitSpec, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("instance has {n} vertices, over the exact-mode cap of {cap}")]
    OverCap { n: u32, cap: u32 },
    #[error("subset bound m = {m} invalid for n = {n} (need 1 <= m <= n)")]
    InvalidBound { m: u32, n: u32 },
}

/// A bipartition together with the thresholds it certifies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitWitness {
    a: VertexSet,
    b: VertexSet,
    spec: SplitSpec,
}

impl SplitWitness {
    pub fn new(a: VertexSet, b: VertexSet, spec: SplitSpec) -> Self {
        SplitWitness { a, b, spec }
    }

    pub fn a(&self) -> &VertexSet {
        &self.a
    }

    pub fn b(&self) -> &VertexSet {
        &self.b
    }

    pub fn spec(&self) -> SplitSpec {
        self.spec
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitOutcome {
    Found(SplitWitness),
    Unsplittable,
    BudgetExceeded,
}

impl SplitOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, SplitOutcome::Found(_))
    }
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub outcome: SplitOutcome,
    pub nodes: u64,
    pub elapsed: Duration,
}

/// True iff `w` is a genuine witness for its spec on `d`: parts non-empty,
/// disjoint, covering, and meeting both induced-degree thresholds.
pub fn verify_partition(d: &Digraph, w: &SplitWitness) -> bool {
    let (a, b) = (w.a(), w.b());
    if a.universe() != d.n() || b.universe() != d.n() {
        return false;
    }
    if a.is_empty() || b.is_empty() {
        return false;
    }
    if !a.intersection(b).is_empty() || a.len() + b.len() != d.n() {
        return false;
    }
    min_out_degree(d, a).is_ok_and(|deg| deg >= w.spec().s())
        && min_out_degree(d, b).is_ok_and(|deg| deg >= w.spec().t())
}

/// When the two thresholds coincide, `(A, B)` and `(B, A)` are the same
/// witness; canonical form puts vertex 0 in A.
fn canonicalize(mut w: SplitWitness) -> SplitWitness {
    if w.spec.s() == w.spec.t() && w.b.contains(0) {
        std::mem::swap(&mut w.a, &mut w.b);
    }
    w
}

pub const DEFAULT_BRUTE_CAP: u32 = 20;

/// Enumerates all proper bipartitions by bitmask, smallest A-mask first (with
/// vertex 0 forced into A when `s = t`). Exact; the oracle for the
/// branch-and-bound path.
pub fn exists_split_bruteforce(d: &Digraph, spec: SplitSpec) -> Result<SearchResult, SolverError> {
    exists_split_bruteforce_capped(d, spec, DEFAULT_BRUTE_CAP)
}

pub fn exists_split_bruteforce_capped(
    d: &Digraph,
    spec: SplitSpec,
    cap: u32,
) -> Result<SearchResult, SolverError> {
    let n = d.n();
    // Masks are u64, so 64 vertices is the hard ceiling however the cap is
    // raised.
    let cap = cap.min(64);
    if n > cap {
        return Err(SolverError::OverCap { n, cap });
    }
    let start = Instant::now();
    if n < 2 {
        return Ok(SearchResult {
            outcome: SplitOutcome::Unsplittable,
            nodes: 0,
            elapsed: start.elapsed(),
        });
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| {
            d.out_neighbors(v)
                .iter()
                .fold(0u64, |m, &u| m | 1u64 << u)
        })
        .collect();
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let symmetric = spec.s() == spec.t();
    let meets = |mask: u64, threshold: u32| -> bool {
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            if (adj[v as usize] & mask).count_ones() < threshold {
                return false;
            }
        }
        true
    };
    let mut nodes = 0u64;
    for a_mask in 1..full {
        if symmetric && a_mask & 1 == 0 {
            continue;
        }
        nodes += 1;
        let b_mask = full & !a_mask;
        if meets(a_mask, spec.s()) && meets(b_mask, spec.t()) {
            let a = VertexSet::from_ids(n, (0..n).filter(|&v| a_mask >> v & 1 == 1));
            let b = VertexSet::from_ids(n, (0..n).filter(|&v| b_mask >> v & 1 == 1));
            let witness = canonicalize(SplitWitness::new(a, b, spec));
            debug_assert!(verify_partition(d, &witness));
            return Ok(SearchResult {
                outcome: SplitOutcome::Found(witness),
                nodes,
                elapsed: start.elapsed(),
            });
        }
    }
    Ok(SearchResult {
        outcome: SplitOutcome::Unsplittable,
        nodes,
        elapsed: start.elapsed(),
    })
}

/// Knobs for the branch-and-bound search. `prune: false` disables the two
/// core-based pruning rules (used to test that they never change outcomes).
#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub budget: Option<u64>,
    pub prune: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: None, prune: true }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Label {
    A,
    B,
    U,
}

struct Search<'a> {
    d: &'a Digraph,
    spec: SplitSpec,
    label: Vec<Label>,
    /// A ∪ U and B ∪ U: the vertices still allowed on each side.
    cand_a: VertexSet,
    cand_b: VertexSet,
    undecided: u32,
    nodes: u64,
    budget: Option<u64>,
    budget_hit: bool,
    prune: bool,
}

impl<'a> Search<'a> {
    fn run(&mut self) -> Option<SplitWitness> {
        self.nodes += 1;
        if let Some(budget) = self.budget {
            if self.nodes > budget {
                self.budget_hit = true;
                return None;
            }
        }
        if self.nodes.is_multiple_of(1 << 20) {
            log::debug!("search explored {} nodes", self.nodes);
        }
        let n = self.d.n();
        if self.prune {
            // P1: every A-labeled vertex must survive the s-core of A ∪ U;
            // any completion of A sits inside that core.
            let core_a = out_core(self.d, &self.cand_a, self.spec.s());
            if (0..n).any(|v| self.label[v as usize] == Label::A && !core_a.contains(v)) {
                return None;
            }
            // P2: symmetric for B with t.
            let core_b = out_core(self.d, &self.cand_b, self.spec.t());
            if (0..n).any(|v| self.label[v as usize] == Label::B && !core_b.contains(v)) {
                return None;
            }
        }
        if self.undecided == 0 {
            let a = VertexSet::from_ids(n, (0..n).filter(|&v| self.label[v as usize] == Label::A));
            let b = VertexSet::from_ids(n, (0..n).filter(|&v| self.label[v as usize] == Label::B));
            if a.is_empty() || b.is_empty() {
                return None;
            }
            let witness = SplitWitness::new(a, b, self.spec);
            if verify_partition(self.d, &witness) {
                return Some(canonicalize(witness));
            }
            return None;
        }
        // Branch on the most constrained vertex: minimum remaining slack over
        // the two sides, ties to the lowest id.
        let mut pick = None;
        let mut best_slack = i64::MAX;
        for v in 0..n {
            if self.label[v as usize] != Label::U {
                continue;
            }
            let nbrs = self.d.out_neighbors(v);
            let deg_a = nbrs.iter().filter(|&&u| self.cand_a.contains(u)).count() as i64;
            let deg_b = nbrs.iter().filter(|&&u| self.cand_b.contains(u)).count() as i64;
            let slack = (deg_a - self.spec.s() as i64).min(deg_b - self.spec.t() as i64);
            if slack < best_slack {
                best_slack = slack;
                pick = Some(v);
            }
        }
        let v = pick.expect("undecided vertex exists");
        // A-first branch order.
        self.label[v as usize] = Label::A;
        self.cand_b.remove(v);
        self.undecided -= 1;
        let found = self.run();
        self.undecided += 1;
        self.cand_b.insert(v);
        self.label[v as usize] = Label::U;
        if found.is_some() || self.budget_hit {
            return found;
        }
        self.label[v as usize] = Label::B;
        self.cand_a.remove(v);
        self.undecided -= 1;
        let found = self.run();
        self.undecided += 1;
        self.cand_a.insert(v);
        self.label[v as usize] = Label::U;
        found
    }
}

/// Exact search via branch-and-bound over A / B / undecided labelings.
/// Agrees with [`exists_split_bruteforce`] on every instance (tested); no
/// size cap, but worst-case exponential — pass a budget for large inputs.
pub fn exists_split(d: &Digraph, spec: SplitSpec) -> SearchResult {
    exists_split_with(d, spec, SearchOptions::default())
}

pub fn exists_split_with(d: &Digraph, spec: SplitSpec, opts: SearchOptions) -> SearchResult {
    let start = Instant::now();
    let n = d.n();
    if n < 2 {
        return SearchResult {
            outcome: SplitOutcome::Unsplittable,
            nodes: 0,
            elapsed: start.elapsed(),
        };
    }
    let mut search = Search {
        d,
        spec,
        label: vec![Label::U; n as usize],
        cand_a: VertexSet::full(n),
        cand_b: VertexSet::full(n),
        undecided: n,
        nodes: 0,
        budget: opts.budget,
        budget_hit: false,
        prune: opts.prune,
    };
    if spec.s() == spec.t() {
        // Symmetry break: the parts are interchangeable, so pin the lowest
        // vertex id to A.
        search.label[0] = Label::A;
        search.cand_b.remove(0);
        search.undecided -= 1;
    }
    let found = search.run();
    let outcome = match found {
        Some(w) => {
            debug_assert!(verify_partition(d, &w));
            SplitOutcome::Found(w)
        }
        None if search.budget_hit => SplitOutcome::BudgetExceeded,
        None => SplitOutcome::Unsplittable,
    };
    SearchResult { outcome, nodes: search.nodes, elapsed: start.elapsed() }
}

pub const DEFAULT_CORE_CAP: u32 = 30;

/// Maximum of `δ+(D[X])` over non-empty `X` with `|X| <= m`, exact.
///
/// Searches one threshold at a time: `X` attains `δ+ >= g` only inside the
/// global g-core, so the search branches on core membership, re-peeling after
/// every exclusion.
pub fn max_bounded_core(d: &Digraph, m: u32) -> Result<u32, SolverError> {
    max_bounded_core_capped(d, m, DEFAULT_CORE_CAP)
}

pub fn max_bounded_core_capped(d: &Digraph, m: u32, cap: u32) -> Result<u32, SolverError> {
    let n = d.n();
    if m < 1 || m > n {
        return Err(SolverError::InvalidBound { m, n });
    }
    if n > cap {
        return Err(SolverError::OverCap { n, cap });
    }
    let mut best = 0;
    // δ+(D[X]) <= |X| - 1, so thresholds above m - 1 are unreachable.
    let limit = (m - 1).min(crate::digraph::max_out_degree(d));
    for g in 1..=limit {
        if exists_bounded_core(d, g, m) {
            best = g;
        } else {
            break; // monotone in g
        }
    }
    Ok(best)
}

fn exists_bounded_core(d: &Digraph, g: u32, m: u32) -> bool {
    fn rec(d: &Digraph, g: u32, m: u32, chosen: &VertexSet, universe: &VertexSet) -> bool {
        let core = out_core(d, universe, g);
        if !chosen.is_subset_of(&core) {
            return false;
        }
        if core.is_empty() {
            return false;
        }
        if core.len() <= m {
            return true; // the core itself is a valid X
        }
        if chosen.len() == m {
            return min_out_degree(d, chosen).is_ok_and(|deg| deg >= g);
        }
        // Branch on the least-connected free vertex of the core.
        let pick = core
            .iter()
            .filter(|&v| !chosen.contains(v))
            .min_by_key(|&v| {
                let deg = d.out_neighbors(v).iter().filter(|&&u| core.contains(u)).count() as u32;
                (deg, v)
            })
            .expect("core larger than chosen");
        let mut with = chosen.clone();
        with.insert(pick);
        if rec(d, g, m, &with, &core) {
            return true;
        }
        let mut without = core.clone();
        without.remove(pick);
        rec(d, g, m, chosen, &without)
    }
    rec(d, g, m, &VertexSet::empty(d.n()), &VertexSet::full(d.n()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_digraph, directed_cycle, paley_tournament, random_digraph_min_outdeg, Seed};

    fn spec(s: u32, t: u32) -> SplitSpec {
        SplitSpec::new(s, t).unwrap()
    }

    #[test]
    fn verify_partition_examples() {
        let k4 = complete_digraph(4).unwrap();
        let w = SplitWitness::new(
            VertexSet::from_ids(4, [0, 1]),
            VertexSet::from_ids(4, [2, 3]),
            spec(1, 1),
        );
        assert!(verify_partition(&k4, &w));

        let c6 = directed_cycle(6).unwrap();
        let w = SplitWitness::new(
            VertexSet::from_ids(6, [0, 1, 2]),
            VertexSet::from_ids(6, [3, 4, 5]),
            spec(1, 1),
        );
        assert!(!verify_partition(&c6, &w));

        let k5 = complete_digraph(5).unwrap();
        let w = SplitWitness::new(
            VertexSet::from_ids(5, [0]),
            VertexSet::from_ids(5, [1, 2, 3, 4]),
            spec(1, 1),
        );
        assert!(!verify_partition(&k5, &w));

        // Overlapping or non-covering parts are rejected.
        let w = SplitWitness::new(
            VertexSet::from_ids(5, [0, 1]),
            VertexSet::from_ids(5, [1, 2, 3, 4]),
            spec(1, 1),
        );
        assert!(!verify_partition(&k5, &w));
    }

    #[test]
    fn bruteforce_examples() {
        // Complete digraph on s + t + 2 vertices splits into s+1 / t+1.
        for s in 1..=3 {
            for t in 1..=3 {
                let d = complete_digraph(s + t + 2).unwrap();
                let r = exists_split_bruteforce(&d, spec(s, t)).unwrap();
                match r.outcome {
                    SplitOutcome::Found(w) => assert!(verify_partition(&d, &w)),
                    other => panic!("expected Found, got {other:?}"),
                }
            }
        }
        let c6 = directed_cycle(6).unwrap();
        assert_eq!(
            exists_split_bruteforce(&c6, spec(1, 1)).unwrap().outcome,
            SplitOutcome::Unsplittable
        );
        // Two disjoint triangles split into the triangles.
        let two_c3 = Digraph::from_arcs(
            6,
            vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)],
        )
        .unwrap();
        match exists_split_bruteforce(&two_c3, spec(1, 1)).unwrap().outcome {
            SplitOutcome::Found(w) => {
                assert_eq!(w.a().to_vec(), vec![0, 1, 2]);
                assert_eq!(w.b().to_vec(), vec![3, 4, 5]);
            }
            other => panic!("expected Found, got {other:?}"),
        }
    }

    #[test]
    fn bruteforce_respects_cap() {
        let d = complete_digraph(21).unwrap();
        assert_eq!(
            exists_split_bruteforce(&d, spec(1, 1)).unwrap_err(),
            SolverError::OverCap { n: 21, cap: 20 }
        );
    }

    #[test]
    fn branch_and_bound_agrees_with_bruteforce() {
        let specs = [spec(1, 1), spec(1, 2), spec(2, 2)];
        for seed in 0..60u64 {
            let n = 4 + (seed % 9) as u32;
            let delta = 1 + (seed % 3).min(n as u64 - 2) as u32;
            let d = random_digraph_min_outdeg(n, delta, Seed(seed)).unwrap();
            for sp in specs {
                let brute = exists_split_bruteforce(&d, sp).unwrap();
                let bb = exists_split(&d, sp);
                assert_eq!(
                    brute.outcome.is_found(),
                    bb.outcome.is_found(),
                    "disagreement at seed={seed} n={n} delta={delta} spec={sp}"
                );
                if let SplitOutcome::Found(w) = &bb.outcome {
                    assert!(verify_partition(&d, w));
                }
            }
        }
    }

    #[test]
    fn paley_7_matches_bruteforce() {
        let d = paley_tournament(7).unwrap();
        let brute = exists_split_bruteforce(&d, spec(1, 1)).unwrap();
        let bb = exists_split(&d, spec(1, 1));
        assert_eq!(brute.outcome.is_found(), bb.outcome.is_found());
    }

    #[test]
    fn k5_with_sink_matches_bruteforce() {
        // K5 with vertex 4's out-arcs deleted: a sink can join neither part
        // at threshold 2.
        let arcs: Vec<(u32, u32)> = complete_digraph(5)
            .unwrap()
            .arcs()
            .filter(|&(u, _)| u != 4)
            .collect();
        let d = Digraph::from_arcs(5, arcs).unwrap();
        let brute = exists_split_bruteforce(&d, spec(2, 2)).unwrap();
        let bb = exists_split(&d, spec(2, 2));
        assert_eq!(brute.outcome.is_found(), bb.outcome.is_found());
        assert!(!bb.outcome.is_found());
    }

    #[test]
    fn pruning_never_changes_outcomes() {
        for seed in 0..30u64 {
            let n = 4 + (seed % 7) as u32;
            let d = random_digraph_min_outdeg(n, 2.min(n - 2).max(1), Seed(seed)).unwrap();
            for sp in [spec(1, 1), spec(2, 2)] {
                let with = exists_split_with(&d, sp, SearchOptions { budget: None, prune: true });
                let without = exists_split_with(&d, sp, SearchOptions { budget: None, prune: false });
                assert_eq!(with.outcome.is_found(), without.outcome.is_found());
            }
        }
    }

    #[test]
    fn budget_is_reported() {
        let c6 = directed_cycle(6).unwrap();
        let r = exists_split_with(&c6, spec(1, 1), SearchOptions { budget: Some(0), prune: true });
        assert_eq!(r.outcome, SplitOutcome::BudgetExceeded);
        // Enough budget reaches the exact answer.
        let r = exists_split_with(&c6, spec(1, 1), SearchOptions { budget: Some(1 << 20), prune: true });
        assert_eq!(r.outcome, SplitOutcome::Unsplittable);
    }

    #[test]
    fn witness_is_canonical_when_symmetric() {
        let d = complete_digraph(6).unwrap();
        for r in [
            exists_split(&d, spec(2, 2)),
            exists_split_bruteforce(&d, spec(2, 2)).unwrap(),
        ] {
            match r.outcome {
                SplitOutcome::Found(w) => assert!(w.a().contains(0)),
                other => panic!("expected Found, got {other:?}"),
            }
        }
    }

    #[test]
    fn node_counts_are_deterministic() {
        let d = paley_tournament(11).unwrap();
        let a = exists_split(&d, spec(1, 1));
        let b = exists_split(&d, spec(1, 1));
        assert_eq!(a.nodes, b.nodes);
    }

    #[test]
    fn tiny_instances_are_unsplittable() {
        let single = Digraph::from_arcs(1, vec![]).unwrap();
        assert_eq!(exists_split(&single, spec(1, 1)).outcome, SplitOutcome::Unsplittable);
        assert_eq!(
            exists_split_bruteforce(&single, spec(1, 1)).unwrap().outcome,
            SplitOutcome::Unsplittable
        );
    }

    fn max_bounded_core_brute(d: &Digraph, m: u32) -> u32 {
        let n = d.n();
        let mut best = 0;
        for mask in 1u64..(1 << n) {
            if mask.count_ones() > m {
                continue;
            }
            let x = VertexSet::from_ids(n, (0..n).filter(|&v| mask >> v & 1 == 1));
            best = best.max(min_out_degree(d, &x).unwrap());
        }
        best
    }

    #[test]
    fn max_bounded_core_examples() {
        let k5 = complete_digraph(5).unwrap();
        assert_eq!(max_bounded_core(&k5, 3).unwrap(), 2);
        let c5 = directed_cycle(5).unwrap();
        assert_eq!(max_bounded_core(&c5, 4).unwrap(), 0);
        let p7 = paley_tournament(7).unwrap();
        assert_eq!(max_bounded_core(&p7, 7).unwrap(), 3);
        assert_eq!(
            max_bounded_core(&k5, 0),
            Err(SolverError::InvalidBound { m: 0, n: 5 })
        );
        assert_eq!(
            max_bounded_core(&k5, 6),
            Err(SolverError::InvalidBound { m: 6, n: 5 })
        );
    }

    #[test]
    fn max_bounded_core_matches_bruteforce() {
        for seed in 0..40u64 {
            let n = 4 + (seed % 6) as u32;
            let delta = 1 + (seed % 3).min(n as u64 - 2) as u32;
            let d = random_digraph_min_outdeg(n, delta, Seed(seed + 1000)).unwrap();
            for m in 1..=n {
                assert_eq!(
                    max_bounded_core(&d, m).unwrap(),
                    max_bounded_core_brute(&d, m),
                    "seed={seed} n={n} m={m}"
                );
            }
        }
    }

    #[test]
    fn max_bounded_core_full_size_matches_core_threshold() {
        for seed in 0..20u64 {
            let n = 5 + (seed % 5) as u32;
            let d = random_digraph_min_outdeg(n, 2, Seed(seed)).unwrap();
            let via_cores = (0..n)
                .rev()
                .find(|&g| !out_core(&d, &VertexSet::full(n), g).is_empty())
                .unwrap_or(0);
            assert_eq!(max_bounded_core(&d, n).unwrap(), via_cores);
        }
    }
}
