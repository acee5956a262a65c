//! Random bipartite k-out graphs and exhaustive verification of their
//! expansion property.
//!
//! A k-out graph on sides `S`, `T` with `|S| = |T| = n` gives every S-vertex
//! exactly `k` uniform random T-neighbors. The property checked here: for
//! every non-empty `X ⊆ S` with `|X| <= ⌊εn⌋` (ε = 3/(e²k³)) and every
//! `Y ⊆ T` in which each member of `X` has at least 3 neighbors, `|Y| > |X|`.
//! A counting argument shows a violation forces an equal-sized pair, so the
//! checker enumerates `Y ⊆ T` of each size `i <= ⌊εn⌋` and counts the
//! S-vertices with 3+ neighbors inside; a violation exists iff some `Y` of
//! size `i` collects at least `i` of them. Sizes below 3 are vacuous because
//! `|N(x) ∩ Y| >= 3` already needs `|Y| >= 3`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use thiserror::Error;

use crate::certified::{self, rational_to_f64, AmbiguousFloor, Bracket};
use crate::digraph::VertexSet;
use crate::generators::{Seed, SplitMix64};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExpanderError {
    #[error("k must be at least 3 (got {0})")]
    KTooSmall(u32),
    #[error("k = {k} exceeds side size n = {n}")]
    KExceedsN { k: u32, n: u32 },
    #[error("need at least one try")]
    ZeroTries,
    #[error("parameters are for (n = {params_n}, k = {params_k}), graph has (n = {graph_n}, k = {graph_k})")]
    ParamMismatch {
        params_n: u32,
        params_k: u32,
        graph_n: u32,
        graph_k: u32,
    },
    #[error("cannot certify x_cap: {0}")]
    AmbiguousCap(#[from] AmbiguousFloor),
    #[error("no verified graph within {tries} tries; last witness X = {last_x:?}, Y = {last_y:?}")]
    VerificationExhausted {
        tries: u32,
        last_x: Vec<u32>,
        last_y: Vec<u32>,
    },
}

/// Bipartite graph `S ⊔ T`, `|S| = |T| = n`, every S-vertex with exactly `k`
/// distinct T-neighbors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteKOut {
    n: u32,
    k: u32,
    nbrs: Vec<Vec<u32>>,
}

impl BipartiteKOut {
    /// Builds from explicit neighborhoods, validating degree-exactly-k,
    /// strict ordering, and id range.
    pub fn from_neighborhoods(n: u32, k: u32, nbrs: Vec<Vec<u32>>) -> Result<Self, BipParseError> {
        if nbrs.len() != n as usize {
            return Err(BipParseError {
                line: 0,
                kind: BipParseErrorKind::RowCount { expected: n, found: nbrs.len() as u32 },
            });
        }
        for (s, row) in nbrs.iter().enumerate() {
            let line = s + 2; // header is line 1 in the text form
            if row.len() != k as usize {
                return Err(BipParseError {
                    line,
                    kind: BipParseErrorKind::RowWidth { expected: k, found: row.len() },
                });
            }
            for w in row.windows(2) {
                if w[0] >= w[1] {
                    return Err(BipParseError { line, kind: BipParseErrorKind::NotSorted });
                }
            }
            if let Some(&v) = row.last() {
                if v >= n {
                    return Err(BipParseError {
                        line,
                        kind: BipParseErrorKind::IdOutOfRange { v: v as u64, n },
                    });
                }
            }
        }
        Ok(BipartiteKOut { n, k, nbrs })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// T-neighbors of S-vertex `s`, strictly increasing.
    pub fn neighbors(&self, s: u32) -> &[u32] {
        &self.nbrs[s as usize]
    }

    /// For each T-vertex, the list of adjacent S-vertices.
    fn reverse(&self) -> Vec<Vec<u32>> {
        let mut rev = vec![Vec::new(); self.n as usize];
        for (s, row) in self.nbrs.iter().enumerate() {
            for &t in row {
                rev[t as usize].push(s as u32);
            }
        }
        rev
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct BipParseError {
    pub line: usize,
    pub kind: BipParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BipParseErrorKind {
    #[error("malformed header (expected \"bip n k\")")]
    BadHeader,
    #[error("expected {expected} neighbor ids, found {found}")]
    RowWidth { expected: u32, found: usize },
    #[error("neighbor id {v} out of range (n = {n})")]
    IdOutOfRange { v: u64, n: u32 },
    #[error("neighbor ids must be strictly increasing")]
    NotSorted,
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: u32, found: u32 },
    #[error("header declares {n} rows, over the parser limit of {limit}")]
    TooManyRows { n: u32, limit: u32 },
}

/// Row-count ceiling for parsed documents; matches the digraph parser's
/// rationale (a typo'd header must not pre-allocate gigabytes).
pub const PARSE_ROW_LIMIT: u32 = 10_000_000;

/// Parses the bipartite text format: header `bip n k`, then `n` lines of `k`
/// sorted T-ids each.
pub fn parse_bipartite(text: &str) -> Result<BipartiteKOut, BipParseError> {
    let mut lines = text.lines().enumerate();
    let (n, k) = loop {
        match lines.next() {
            None => {
                return Err(BipParseError { line: 1, kind: BipParseErrorKind::BadHeader });
            }
            Some((idx, raw)) => {
                let line = raw.trim();
                if line.is_empty() {
                    continue;
                }
                let mut it = line.split_ascii_whitespace();
                if it.next() != Some("bip") {
                    return Err(BipParseError { line: idx + 1, kind: BipParseErrorKind::BadHeader });
                }
                let n: u32 = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or(BipParseError { line: idx + 1, kind: BipParseErrorKind::BadHeader })?;
                let k: u32 = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or(BipParseError { line: idx + 1, kind: BipParseErrorKind::BadHeader })?;
                if it.next().is_some() {
                    return Err(BipParseError { line: idx + 1, kind: BipParseErrorKind::BadHeader });
                }
                if n > PARSE_ROW_LIMIT {
                    return Err(BipParseError {
                        line: idx + 1,
                        kind: BipParseErrorKind::TooManyRows { n, limit: PARSE_ROW_LIMIT },
                    });
                }
                break (n, k);
            }
        }
    };
    // Capacity hint bounded independently of the header.
    let mut nbrs: Vec<Vec<u32>> = Vec::with_capacity((n as usize).min(1 << 20));
    for (idx, raw) in lines {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if nbrs.len() == n as usize {
            return Err(BipParseError {
                line: line_no,
                kind: BipParseErrorKind::RowCount { expected: n, found: n + 1 },
            });
        }
        let mut row = Vec::with_capacity(k as usize);
        for tok in line.split_ascii_whitespace() {
            let v: u64 = tok.parse().map_err(|_| BipParseError {
                line: line_no,
                kind: BipParseErrorKind::RowWidth { expected: k, found: 0 },
            })?;
            if v >= n as u64 {
                return Err(BipParseError {
                    line: line_no,
                    kind: BipParseErrorKind::IdOutOfRange { v, n },
                });
            }
            row.push(v as u32);
        }
        if row.len() != k as usize {
            return Err(BipParseError {
                line: line_no,
                kind: BipParseErrorKind::RowWidth { expected: k, found: row.len() },
            });
        }
        for w in row.windows(2) {
            if w[0] >= w[1] {
                return Err(BipParseError { line: line_no, kind: BipParseErrorKind::NotSorted });
            }
        }
        nbrs.push(row);
    }
    if nbrs.len() != n as usize {
        return Err(BipParseError {
            line: 0,
            kind: BipParseErrorKind::RowCount { expected: n, found: nbrs.len() as u32 },
        });
    }
    Ok(BipartiteKOut { n, k, nbrs })
}

/// Canonical text form: `bip n k` header, one sorted row per S-vertex, LF.
pub fn emit_bipartite(g: &BipartiteKOut) -> String {
    let mut out = format!("bip {} {}\n", g.n, g.k);
    for row in &g.nbrs {
        let ids: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&ids.join(" "));
        out.push('\n');
    }
    out
}

/// `ε = 3/(e²k³)` as a certified bracket. Defined for `k >= 3` only;
/// smaller degrees are rejected rather than extrapolated.
pub fn epsilon(k: u32) -> Result<Bracket, ExpanderError> {
    if k < 3 {
        return Err(ExpanderError::KTooSmall(k));
    }
    Ok(certified::epsilon_bracket(k as u64))
}

/// Verification parameters: side size, degree, ε, and the subset-size cap
/// `x_cap = ⌊εn⌋`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpanderParams {
    n: u32,
    k: u32,
    epsilon: Bracket,
    x_cap: u32,
    certified: bool,
}

impl ExpanderParams {
    /// Parameters with `x_cap` certified by interval arithmetic; errors if
    /// `εn` sits too close to an integer for the e² bounds to decide the
    /// floor (e.g. n = 266, k = 3 gives εn ≈ 3.99991 and must resolve to 3).
    pub fn certified(n: u32, k: u32) -> Result<Self, ExpanderError> {
        if k < 3 {
            return Err(ExpanderError::KTooSmall(k));
        }
        if k > n {
            return Err(ExpanderError::KExceedsN { k, n });
        }
        let eps = certified::epsilon_bracket(k as u64);
        let x_cap = eps.mul_u64(n as u64).certified_floor()? as u32;
        Ok(ExpanderParams { n, k, epsilon: eps, x_cap, certified: true })
    }

    /// Parameters with an explicit cap, for exercising the verification
    /// machinery at sizes where the certified cap would be 0. Marked
    /// uncertified; nothing built on top may claim the expansion guarantee.
    pub fn with_cap(n: u32, k: u32, x_cap: u32) -> Result<Self, ExpanderError> {
        if k < 3 {
            return Err(ExpanderError::KTooSmall(k));
        }
        if k > n {
            return Err(ExpanderError::KExceedsN { k, n });
        }
        let eps = certified::epsilon_bracket(k as u64);
        Ok(ExpanderParams { n, k, epsilon: eps, x_cap, certified: false })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn epsilon(&self) -> &Bracket {
        &self.epsilon
    }

    pub fn x_cap(&self) -> u32 {
        self.x_cap
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    fn matches(&self, g: &BipartiteKOut) -> Result<(), ExpanderError> {
        if self.n != g.n() || self.k != g.k() {
            return Err(ExpanderError::ParamMismatch {
                params_n: self.n,
                params_k: self.k,
                graph_n: g.n(),
                graph_k: g.k(),
            });
        }
        Ok(())
    }
}

/// Outcome of a property check. A witness is present exactly when the
/// property fails: every member of `x` has at least 3 neighbors in `y` and
/// `|y| <= |x| <= x_cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyVerdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub x: VertexSet,
    pub y: VertexSet,
}

/// Samples the k-out graph: each S-vertex independently receives a uniform
/// `k`-subset of T. Deterministic in the seed.
pub fn sample_k_out(n: u32, k: u32, seed: Seed) -> Result<BipartiteKOut, ExpanderError> {
    if k < 3 {
        return Err(ExpanderError::KTooSmall(k));
    }
    if k > n {
        return Err(ExpanderError::KExceedsN { k, n });
    }
    let mut rng = SplitMix64::new(seed);
    let mut pool: Vec<u32> = (0..n).collect();
    let mut nbrs = Vec::with_capacity(n as usize);
    for _ in 0..n {
        // Restore the identity pool; k_subset scrambles a prefix.
        for (i, slot) in pool.iter_mut().enumerate() {
            *slot = i as u32;
        }
        nbrs.push(rng.k_subset(&mut pool, k as usize));
    }
    Ok(BipartiteKOut { n, k, nbrs })
}

/// Incremental scan state for one enumeration worker: counts, per T-element,
/// how many chosen elements each S-vertex sees, and how many S-vertices have
/// reached 3.
struct Scan<'a> {
    rev: &'a [Vec<u32>],
    cnt: Vec<u16>,
    hits: u32,
    need: u32,
    chosen: Vec<u32>,
}

impl<'a> Scan<'a> {
    fn new(rev: &'a [Vec<u32>], n: u32, need: u32) -> Self {
        Scan { rev, cnt: vec![0; n as usize], hits: 0, need, chosen: Vec::new() }
    }

    fn add(&mut self, t: u32) {
        for &x in &self.rev[t as usize] {
            let c = &mut self.cnt[x as usize];
            *c += 1;
            if *c == 3 {
                self.hits += 1;
            }
        }
        self.chosen.push(t);
    }

    fn remove(&mut self, t: u32) {
        self.chosen.pop();
        for &x in &self.rev[t as usize] {
            let c = &mut self.cnt[x as usize];
            if *c == 3 {
                self.hits -= 1;
            }
            *c -= 1;
        }
    }

    /// Chooses `remaining` more elements below `bound`, ascending, which
    /// yields colex order overall. Returns the first violating Y.
    fn run(&mut self, remaining: u32, bound: u32) -> Option<Vec<u32>> {
        if remaining == 0 {
            if self.hits >= self.need {
                let mut y = self.chosen.clone();
                y.sort_unstable();
                return Some(y);
            }
            return None;
        }
        for t in (remaining - 1)..bound {
            self.add(t);
            if let Some(y) = self.run(remaining - 1, t) {
                return Some(y);
            }
            self.remove(t);
        }
        None
    }
}

/// Enumerates all size-`i` subsets of T in colex order, partitioned by
/// largest element so workers can run in parallel; the returned violation is
/// the colex-smallest regardless of scheduling.
fn scan_level(rev: &[Vec<u32>], n: u32, i: u32, parallel: bool) -> Option<Vec<u32>> {
    let stratum = |t: u32| -> Option<Vec<u32>> {
        let mut scan = Scan::new(rev, n, i);
        scan.add(t);
        scan.run(i - 1, t)
    };
    if parallel {
        ((i - 1)..n).into_par_iter().find_map_first(stratum)
    } else {
        ((i - 1)..n).find_map(stratum)
    }
}

/// For degree exactly 3 and `|Y| = 3`, an S-vertex has 3 neighbors in `Y`
/// only when `Y` is its entire neighborhood, so a violation at this level is
/// three S-vertices sharing one neighborhood triple. Sorting the triples
/// finds it in `O(n log n)`; cross-checked against the generic scan in tests.
fn shortcut_k3_i3(g: &BipartiteKOut) -> Option<Vec<u32>> {
    debug_assert_eq!(g.k, 3);
    let mut order: Vec<u32> = (0..g.n).collect();
    order.sort_unstable_by(|&a, &b| {
        g.nbrs[a as usize]
            .cmp(&g.nbrs[b as usize])
            .then(a.cmp(&b))
    });
    let mut best: Option<&[u32]> = None;
    let mut run_start = 0;
    for idx in 1..=order.len() {
        let run_ended = idx == order.len()
            || g.nbrs[order[idx] as usize] != g.nbrs[order[run_start] as usize];
        if run_ended {
            if idx - run_start >= 3 {
                let triple = g.nbrs[order[run_start] as usize].as_slice();
                let better = match best {
                    None => true,
                    // Colex comparison of sorted triples: largest element
                    // first.
                    Some(cur) => triple.iter().rev().lt(cur.iter().rev()),
                };
                if better {
                    best = Some(triple);
                }
            }
            run_start = idx;
        }
    }
    best.map(|t| t.to_vec())
}

fn witness_for(g: &BipartiteKOut, y: &[u32]) -> Witness {
    let qualifying: Vec<u32> = (0..g.n)
        .filter(|&s| {
            g.neighbors(s).iter().filter(|t| y.binary_search(t).is_ok()).count() >= 3
        })
        .collect();
    debug_assert!(qualifying.len() >= y.len());
    // Canonical equal-size witness: the |Y| smallest qualifying S-ids.
    let x: Vec<u32> = qualifying.into_iter().take(y.len()).collect();
    Witness {
        x: VertexSet::from_ids(g.n, x),
        y: VertexSet::from_ids(g.n, y.iter().copied()),
    }
}

fn check_property_ii_impl(
    g: &BipartiteKOut,
    params: &ExpanderParams,
    parallel: bool,
) -> Result<PropertyVerdict, ExpanderError> {
    params.matches(g)?;
    if params.x_cap < 3 {
        // |N(x) ∩ Y| >= 3 forces |Y| >= 3, so caps below 3 hold vacuously.
        return Ok(PropertyVerdict { holds: true, witness: None });
    }
    let rev = g.reverse();
    for i in 3..=params.x_cap {
        let violation = if g.k == 3 && i == 3 {
            shortcut_k3_i3(g)
        } else {
            scan_level(&rev, g.n, i, parallel)
        };
        if let Some(y) = violation {
            return Ok(PropertyVerdict { holds: false, witness: Some(witness_for(g, &y)) });
        }
    }
    Ok(PropertyVerdict { holds: true, witness: None })
}

/// Exhaustively decides the expansion property for `g` under `params`.
///
/// The witness, when present, is canonical: the smallest violating size, the
/// colex-smallest `Y` of that size, and the lowest qualifying S-ids as `X`.
pub fn check_property_ii(
    g: &BipartiteKOut,
    params: &ExpanderParams,
) -> Result<PropertyVerdict, ExpanderError> {
    check_property_ii_impl(g, params, true)
}

/// The union-bound sum `Σ_{i=1}^{⌊εn⌋} C(n,i)² (1/6)^i (ki/n)^{3i}`,
/// evaluated exactly in rational arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct UnionBound {
    pub n: u32,
    pub k: u32,
    pub cap: u32,
    /// Term values for i = 1..=cap.
    pub terms: Vec<BigRational>,
    pub sum: BigRational,
}

impl UnionBound {
    pub fn approx(&self) -> f64 {
        rational_to_f64(&self.sum)
    }

    pub fn is_below_one(&self) -> bool {
        self.sum < BigRational::one()
    }

    /// The closed form of the geometric majorant: with ε = 3/(e²k³) the
    /// ratio e²k³ε/6 is exactly 1/2, so the full geometric series sums to 1.
    pub fn majorant() -> BigRational {
        BigRational::one()
    }

    /// Partial geometric bound `Σ_{i=1}^{j} (1/2)^i = 1 - 2^{-j}`.
    pub fn geometric_partial(j: u32) -> BigRational {
        let two_j = BigInt::from(1u8) << j;
        BigRational::new(&two_j - 1, two_j)
    }
}

pub fn union_bound_sum(n: u32, k: u32) -> Result<UnionBound, ExpanderError> {
    if k < 3 {
        return Err(ExpanderError::KTooSmall(k));
    }
    let cap = certified::epsilon_bracket(k as u64)
        .mul_u64(n as u64)
        .certified_floor()? as u32;
    let mut terms = Vec::with_capacity(cap as usize);
    let mut sum = BigRational::from_integer(0.into());
    let mut binom = BigInt::one(); // C(n, 0)
    for i in 1..=cap {
        // C(n, i) = C(n, i-1) * (n - i + 1) / i, exact at every step.
        binom = binom * BigInt::from(n - i + 1) / BigInt::from(i);
        let numer = &binom * &binom * BigInt::from(k as u64 * i as u64).pow(3 * i);
        let denom = BigInt::from(6u8).pow(i) * BigInt::from(n).pow(3 * i);
        let term = BigRational::new(numer, denom);
        sum += &term;
        terms.push(term);
    }
    // The geometric majorant pins the whole sum strictly below 1; enforce it.
    assert!(sum < BigRational::one(), "union-bound sum reached 1 (n={n}, k={k})");
    Ok(UnionBound { n, k, cap, terms, sum })
}

/// A k-out graph that passed exhaustive verification, together with the
/// parameters it was verified against and the retry count.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifiedKOut {
    graph: BipartiteKOut,
    params: ExpanderParams,
    tries: u32,
    seed: Seed,
}

impl VerifiedKOut {
    pub fn graph(&self) -> &BipartiteKOut {
        &self.graph
    }

    pub fn params(&self) -> &ExpanderParams {
        &self.params
    }

    /// Number of samples drawn before (and including) the verified one.
    pub fn tries(&self) -> u32 {
        self.tries
    }

    /// The seed of the successful sample.
    pub fn seed(&self) -> Seed {
        self.seed
    }

    pub fn into_graph(self) -> BipartiteKOut {
        self.graph
    }
}

/// Samples with seeds `seed, seed+1, ...` until one graph passes the
/// exhaustive check, up to `max_tries`.
pub fn generate_verified(
    n: u32,
    k: u32,
    seed: Seed,
    max_tries: u32,
) -> Result<VerifiedKOut, ExpanderError> {
    if max_tries < 1 {
        return Err(ExpanderError::ZeroTries);
    }
    let params = ExpanderParams::certified(n, k)?;
    let mut last_witness = None;
    for t in 0..max_tries {
        let try_seed = Seed(seed.0.wrapping_add(t as u64));
        let g = sample_k_out(n, k, try_seed)?;
        let verdict = check_property_ii(&g, &params)?;
        if verdict.holds {
            return Ok(VerifiedKOut { graph: g, params, tries: t + 1, seed: try_seed });
        }
        last_witness = verdict.witness;
    }
    let w = last_witness.expect("a failed try always leaves a witness");
    Err(ExpanderError::VerificationExhausted {
        tries: max_tries,
        last_x: w.x.to_vec(),
        last_y: w.y.to_vec(),
    })
}

/// One trial of a verification sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepTrial {
    pub index: u64,
    pub seed: Seed,
    pub holds: bool,
}

/// Result of sampling `trials` graphs and exhaustively verifying each.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaSweep {
    pub n: u32,
    pub k: u32,
    pub x_cap: u32,
    pub trials: Vec<SweepTrial>,
    pub successes: u64,
    pub union_bound: UnionBound,
}

impl LemmaSweep {
    /// The sweep passes when at least one sampled graph verifies.
    pub fn pass(&self) -> bool {
        self.successes >= 1
    }

    pub fn failure_rate(&self) -> f64 {
        if self.trials.is_empty() {
            return 0.0;
        }
        (self.trials.len() as u64 - self.successes) as f64 / self.trials.len() as f64
    }
}

/// Samples `trials` graphs with per-trial sub-seeds and verifies each one;
/// trial records are ordered by index regardless of worker scheduling.
pub fn run_lemma_sweep(
    n: u32,
    k: u32,
    trials: u64,
    seed: Seed,
) -> Result<LemmaSweep, ExpanderError> {
    let params = ExpanderParams::certified(n, k)?;
    let records: Vec<SweepTrial> = (0..trials)
        .into_par_iter()
        .map(|index| {
            let sub = seed.derive(index);
            let g = sample_k_out(n, k, sub).expect("params validated");
            let verdict = check_property_ii(&g, &params).expect("params match");
            SweepTrial { index, seed: sub, holds: verdict.holds }
        })
        .collect();
    let successes = records.iter().filter(|r| r.holds).count() as u64;
    let union_bound = union_bound_sum(n, k)?;
    Ok(LemmaSweep { n, k, x_cap: params.x_cap(), trials: records, successes, union_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    /// n = 200, k = 3 where S-vertices 0, 1, 2 all have neighborhood
    /// {0, 1, 2}; everything else is distinct.
    fn crafted_violation() -> BipartiteKOut {
        let n = 200u32;
        let mut nbrs = Vec::new();
        for s in 0..n {
            if s < 3 {
                nbrs.push(vec![0, 1, 2]);
            } else {
                let mut row = vec![s, (s + 1) % n, (s + 2) % n];
                row.sort_unstable();
                nbrs.push(row);
            }
        }
        BipartiteKOut::from_neighborhoods(n, 3, nbrs).unwrap()
    }

    #[test]
    fn epsilon_values_and_monotonicity() {
        let e3 = epsilon(3).unwrap();
        let e4 = epsilon(4).unwrap();
        let e5 = epsilon(5).unwrap();
        assert!((e3.approx() - 0.015037253692956966).abs() < 1e-15);
        assert!((e4.approx() - 0.006_343_841_401_716_22).abs() < 1e-15);
        assert!(e3.lo() > e4.hi());
        assert!(e4.lo() > e5.hi());
        assert_eq!(epsilon(2), Err(ExpanderError::KTooSmall(2)));
    }

    #[test]
    fn certified_caps() {
        assert_eq!(ExpanderParams::certified(200, 3).unwrap().x_cap(), 3);
        // εn ≈ 3.99991 here; the certified floor must resolve it to 3.
        assert_eq!(ExpanderParams::certified(266, 3).unwrap().x_cap(), 3);
        assert_eq!(ExpanderParams::certified(267, 3).unwrap().x_cap(), 4);
        assert_eq!(ExpanderParams::certified(630, 4).unwrap().x_cap(), 3);
        assert_eq!(ExpanderParams::certified(10, 3).unwrap().x_cap(), 0);
    }

    #[test]
    fn sampling_is_deterministic_with_exact_degrees() {
        let a = sample_k_out(50, 3, Seed(7)).unwrap();
        let b = sample_k_out(50, 3, Seed(7)).unwrap();
        assert_eq!(a, b);
        for s in 0..50 {
            assert_eq!(a.neighbors(s).len(), 3);
            assert!(a.neighbors(s).windows(2).all(|w| w[0] < w[1]));
        }
        assert_ne!(a, sample_k_out(50, 3, Seed(8)).unwrap());
    }

    #[test]
    fn tiny_side_forces_complete() {
        let g = sample_k_out(3, 3, Seed(99)).unwrap();
        for s in 0..3 {
            assert_eq!(g.neighbors(s), &[0, 1, 2]);
        }
    }

    #[test]
    fn vacuous_cap_holds() {
        let g = sample_k_out(10, 3, Seed(0)).unwrap();
        let params = ExpanderParams::certified(10, 3).unwrap();
        assert_eq!(params.x_cap(), 0);
        assert!(check_property_ii(&g, &params).unwrap().holds);
    }

    #[test]
    fn crafted_violation_is_found_with_canonical_witness() {
        let g = crafted_violation();
        let params = ExpanderParams::certified(200, 3).unwrap();
        let verdict = check_property_ii(&g, &params).unwrap();
        assert!(!verdict.holds);
        let w = verdict.witness.unwrap();
        assert_eq!(w.x.to_vec(), vec![0, 1, 2]);
        assert_eq!(w.y.to_vec(), vec![0, 1, 2]);
        // Witness invariant: re-checkable independently.
        assert!(w.y.len() <= w.x.len() && w.x.len() <= params.x_cap());
        for s in w.x.iter() {
            let hits = g.neighbors(s).iter().filter(|t| w.y.contains(**t)).count();
            assert!(hits >= 3);
        }
    }

    #[test]
    fn shortcut_agrees_with_generic_scan() {
        // Crafted violating instance.
        let g = crafted_violation();
        let rev = g.reverse();
        assert_eq!(shortcut_k3_i3(&g), scan_level(&rev, g.n(), 3, false));
        // Random instances, including small ones where collisions are likely.
        for s in 0..40u64 {
            let n = 6 + (s % 10) as u32;
            let g = sample_k_out(n, 3, Seed(s)).unwrap();
            let rev = g.reverse();
            assert_eq!(
                shortcut_k3_i3(&g),
                scan_level(&rev, n, 3, false),
                "disagreement at n={n} seed={s}"
            );
        }
    }

    #[test]
    fn parallel_scan_matches_serial() {
        for s in [0u64, 1, 2, 3] {
            let g = sample_k_out(40, 4, Seed(s)).unwrap();
            let params = ExpanderParams::with_cap(40, 4, 4).unwrap();
            let par = check_property_ii_impl(&g, &params, true).unwrap();
            let ser = check_property_ii_impl(&g, &params, false).unwrap();
            assert_eq!(par, ser);
        }
    }

    #[test]
    fn param_mismatch_is_rejected() {
        let g = sample_k_out(20, 3, Seed(0)).unwrap();
        let params = ExpanderParams::certified(30, 3).unwrap();
        assert!(matches!(
            check_property_ii(&g, &params),
            Err(ExpanderError::ParamMismatch { .. })
        ));
    }

    #[test]
    fn union_bound_examples() {
        // ⌊ε·6⌋ = 0: the sum is empty.
        let empty = union_bound_sum(6, 3).unwrap();
        assert_eq!(empty.cap, 0);
        assert!(empty.sum.is_zero());

        let ub = union_bound_sum(1000, 3).unwrap();
        assert_eq!(ub.cap, 15);
        assert!(ub.is_below_one());
        // Frozen from the exact-rational oracle.
        assert!((ub.approx() - 0.00489292282015).abs() < 1e-12);
        // Dominated by the i = 1 term.
        assert!(ub.terms[0] > &ub.sum * BigRational::new(9.into(), 10.into()));
    }

    #[test]
    fn union_bound_partial_sums_below_geometric() {
        for (n, k) in [(1000u32, 3u32), (500, 4)] {
            let ub = union_bound_sum(n, k).unwrap();
            let mut partial = BigRational::zero();
            for (idx, term) in ub.terms.iter().enumerate() {
                let i = idx as u32 + 1;
                // Term-by-term: each term is at most (1/2)^i.
                let half_i = BigRational::new(1.into(), BigInt::from(1u8) << i);
                assert!(term <= &half_i, "term {i} exceeds (1/2)^{i} for n={n} k={k}");
                partial += term;
                assert!(partial <= UnionBound::geometric_partial(i));
            }
            assert!(ub.sum < UnionBound::majorant());
        }
    }

    #[test]
    fn generate_verified_small_and_medium() {
        // Vacuous cap: succeeds on try 1.
        let v = generate_verified(3, 3, Seed(0), 5).unwrap();
        assert_eq!(v.tries(), 1);

        let v = generate_verified(200, 3, Seed(0), 20).unwrap();
        assert!(v.tries() <= 20);
        // Idempotent: the returned graph re-verifies.
        let verdict = check_property_ii(v.graph(), v.params()).unwrap();
        assert!(verdict.holds);
    }

    #[test]
    fn generate_verified_reports_exhaustion() {
        // No retry can fix a deterministic violation, so force failure by
        // checking the crafted graph's seed-free path: sample a graph that
        // always violates is not possible; instead check the zero-tries error.
        assert_eq!(
            generate_verified(200, 3, Seed(0), 0),
            Err(ExpanderError::ZeroTries)
        );
    }

    #[test]
    fn bipartite_text_round_trip() {
        let g = sample_k_out(12, 3, Seed(5)).unwrap();
        let text = emit_bipartite(&g);
        assert!(text.starts_with("bip 12 3\n"));
        let back = parse_bipartite(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn bipartite_parse_errors() {
        assert_eq!(
            parse_bipartite("nope 3 3\n").unwrap_err().kind,
            BipParseErrorKind::BadHeader
        );
        assert_eq!(
            parse_bipartite("bip 2 3\n0 1 1\n0 1 2\n").unwrap_err().kind,
            BipParseErrorKind::NotSorted
        );
        assert_eq!(
            parse_bipartite("bip 2 3\n0 1 5\n0 1 1\n").unwrap_err().kind,
            BipParseErrorKind::IdOutOfRange { v: 5, n: 2 }
        );
        assert_eq!(
            parse_bipartite("bip 2 3\n0 1 0 1\n").unwrap_err().kind,
            BipParseErrorKind::RowWidth { expected: 3, found: 4 }
        );
        assert_eq!(
            parse_bipartite("bip 2 3\n0 1 0\n").unwrap_err().kind,
            BipParseErrorKind::NotSorted
        );
    }

    #[test]
    fn sweep_is_reproducible_and_majority_holds() {
        let a = run_lemma_sweep(200, 3, 10, Seed(42)).unwrap();
        let b = run_lemma_sweep(200, 3, 10, Seed(42)).unwrap();
        assert_eq!(a, b);
        assert!(a.pass());
        assert!(a.successes > 5, "violations should be rare at n=200");
        assert!(a.union_bound.is_below_one());
    }
}
