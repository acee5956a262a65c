//! The two reduction gadgets and their lifting claims.
//!
//! The split gadget replaces each vertex's out-neighborhood with `f`
//! intermediate vertices, each feeding a block of `f` original out-neighbors;
//! a min-out-degree-2 guarantee inside the gadget projects to 4 in the base.
//! The tower gadget stacks, per base vertex, layers of `d` fresh vertices
//! joined by directed copies of one verified bipartite k-out graph and
//! terminating in `d` original out-neighbors; a degree-3 guarantee projects
//! to `s`. Both gadgets track the origin of every vertex so subsets can be
//! projected back to the base digraph and the claims checked at runtime.

use num_rational::BigRational;
use rayon::prelude::*;
use thiserror::Error;

use crate::certified::{self, AmbiguousFloor, Bracket};
use crate::digraph::{min_out_degree, out_core, DegreeError, Digraph, VertexSet};
use crate::expander::{BipartiteKOut, VerifiedKOut};
use crate::generators::{Seed, SplitMix64};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GadgetError {
    #[error("f must be at least 1")]
    FTooSmall,
    #[error("s must be at least 4 (got {0}); smaller thresholds are handled by monotonicity, not by this gadget")]
    STooSmall(u32),
    #[error("k must be at least 3 (got {0})")]
    KTooSmall(u32),
    #[error("base minimum out-degree {actual} is below the required {required}")]
    MinOutDegreeTooLow { required: u64, actual: u32 },
    #[error("expander side size {got} does not match layer size d = {expected}")]
    LayerSizeMismatch { expected: u64, got: u32 },
    #[error("expander degree {got} does not match k = {expected}")]
    ExpanderDegreeMismatch { expected: u32, got: u32 },
    #[error("slack inequality s-1 < εd failed for s = {s}, d = {d}")]
    SlackViolation { s: u32, d: u64 },
    #[error(transparent)]
    AmbiguousFloor(#[from] AmbiguousFloor),
    #[error("expected a {expected} gadget, got a {found} gadget")]
    WrongKind { expected: &'static str, found: &'static str },
    #[error("invalid hypothesis level {level} (this claim takes {allowed})")]
    InvalidLevel { level: u32, allowed: &'static str },
    #[error("hypothesis not met: gadget min out-degree {actual} is below level {required}")]
    HypothesisNotMet { required: u32, actual: u32 },
    #[error(transparent)]
    Degree(#[from] DegreeError),
    #[error("one-sided mode requires t = 1 (got t = {0})")]
    ModeNeedsTOne(u32),
    #[error("thresholds must be at least 1")]
    ZeroThreshold,
    #[error("gadget too large for exhaustive subset check (|V| = {0}, limit 25)")]
    TooLargeForExhaustive(u32),
}

/// Provenance of one gadget vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    /// A vertex of the base digraph, same id.
    Original(u32),
    /// Split-gadget intermediate `v_{i,j}`: group `j` (1-based, `1..=f`) of
    /// base vertex `i`.
    SplitAux { i: u32, j: u32 },
    /// Tower-gadget layer vertex: slot `slot` (0-based) of layer `j`
    /// (`3..=s-1`) above base vertex `i`.
    TowerAux { i: u32, j: u32, slot: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetKind {
    Split { f: u32 },
    Tower { s: u32, k: u32, d: u64 },
}

impl GadgetKind {
    fn name(&self) -> &'static str {
        match self {
            GadgetKind::Split { .. } => "split",
            GadgetKind::Tower { .. } => "tower",
        }
    }
}

/// A constructed gadget: the base digraph, the gadget digraph, and one origin
/// tag per gadget vertex (original tags are a bijection onto the base).
#[derive(Debug, Clone)]
pub struct OriginMap {
    base: Digraph,
    gadget: Digraph,
    origin: Vec<Origin>,
    kind: GadgetKind,
    certified: bool,
}

impl OriginMap {
    pub fn base(&self) -> &Digraph {
        &self.base
    }

    pub fn gadget(&self) -> &Digraph {
        &self.gadget
    }

    pub fn origin(&self, gadget_vertex: u32) -> Origin {
        self.origin[gadget_vertex as usize]
    }

    pub fn kind(&self) -> GadgetKind {
        self.kind
    }

    /// False when the gadget was built with an overridden layer size: the
    /// construction is mechanically sound but the lifting claim loses its
    /// guarantee, so checkers only report.
    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// The gadget vertices that are not originals.
    pub fn aux_vertices(&self) -> VertexSet {
        VertexSet::from_ids(
            self.gadget.n(),
            (0..self.gadget.n()).filter(|&v| !matches!(self.origin[v as usize], Origin::Original(_))),
        )
    }
}

/// Parameters of the split gadget: the hypothetical value `f` of the
/// two-threshold bound. The base must satisfy `δ+ >= f²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GadgetAParams {
    f: u32,
}

impl GadgetAParams {
    pub fn new(f: u32) -> Result<Self, GadgetError> {
        if f < 1 {
            return Err(GadgetError::FTooSmall);
        }
        Ok(GadgetAParams { f })
    }

    pub fn f(&self) -> u32 {
        self.f
    }
}

/// Certified floor of `(e²/3) · k³ · s`, the tower layer size.
pub fn layer_size(k: u32, s: u32) -> Result<u64, GadgetError> {
    if k < 3 {
        return Err(GadgetError::KTooSmall(k));
    }
    if s < 4 {
        return Err(GadgetError::STooSmall(s));
    }
    Ok(certified::layer_size_bracket(k as u64, s as u64).certified_floor()?)
}

/// `s - 1 < ε·d`, decided against the certified lower endpoint of ε. This is
/// the inequality that lets the tower induction grow a set of size up to
/// `s - 1` through every layer.
pub fn slack_holds(s: u32, k: u32, d: u64) -> bool {
    let eps = certified::epsilon_bracket(k as u64);
    let lhs = BigRational::from_integer((s - 1).into());
    lhs < eps.lo() * BigRational::from_integer(d.into())
}

/// Parameters of the tower gadget: target threshold `s`, hypothetical value
/// `k` of the three-threshold bound, layer size `d`, and the bipartite graph
/// used for every inter-layer copy.
#[derive(Debug, Clone, PartialEq)]
pub struct TowerParams {
    s: u32,
    k: u32,
    d: u64,
    g: BipartiteKOut,
    certified: bool,
}

impl TowerParams {
    /// Certified parameters: `d` is the certified layer size, the expander is
    /// verified (enforced by taking [`VerifiedKOut`]), and the slack
    /// inequality `s - 1 < εd` is checked in exact arithmetic.
    pub fn new(s: u32, verified: VerifiedKOut) -> Result<Self, GadgetError> {
        let k = verified.graph().k();
        let d = layer_size(k, s)?;
        if verified.graph().n() as u64 != d {
            return Err(GadgetError::LayerSizeMismatch { expected: d, got: verified.graph().n() });
        }
        if !slack_holds(s, k, d) {
            return Err(GadgetError::SlackViolation { s, d });
        }
        Ok(TowerParams { s, k, d, g: verified.into_graph(), certified: true })
    }

    /// Overridden layer size, for exercising the construction at small
    /// scale. The resulting gadget is marked uncertified.
    pub fn with_layer_size(s: u32, d: u64, g: BipartiteKOut) -> Result<Self, GadgetError> {
        if s < 4 {
            return Err(GadgetError::STooSmall(s));
        }
        let k = g.k();
        if k < 3 {
            return Err(GadgetError::KTooSmall(k));
        }
        if g.n() as u64 != d {
            return Err(GadgetError::LayerSizeMismatch { expected: d, got: g.n() });
        }
        Ok(TowerParams { s, k, d, g, certified: false })
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn expander(&self) -> &BipartiteKOut {
        &self.g
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// `s - 1 < εd` under certified arithmetic.
    pub fn slack_holds(&self) -> bool {
        slack_holds(self.s, self.k, self.d)
    }
}

/// Builds the split gadget: fresh vertices `v_{i,j}` (`j = 1..=f`) with arcs
/// `v_i -> v_{i,j}` and `v_{i,j} -> u_i^{(j-1)f + l}` for `l = 1..=f`, where
/// `u_i^1..u_i^{f²}` are the first `f²` out-neighbors of `v_i` in ascending
/// id order. No other arcs; in particular the base arcs are not kept, so
/// every out-degree in the gadget is exactly `f`.
pub fn split_neighborhood_gadget(
    base: &Digraph,
    params: GadgetAParams,
) -> Result<OriginMap, GadgetError> {
    let f = params.f;
    let n = base.n();
    let required = f as u64 * f as u64;
    let actual = (0..n).map(|v| base.out_degree(v)).min().unwrap_or(0);
    if (actual as u64) < required {
        return Err(GadgetError::MinOutDegreeTooLow { required, actual });
    }
    let gadget_n = n + n * f;
    let aux_id = |i: u32, j: u32| n + i * f + (j - 1);
    let mut arcs = Vec::with_capacity((n as usize) * (f as usize) * (1 + f as usize));
    let mut origin = Vec::with_capacity(gadget_n as usize);
    for v in 0..n {
        origin.push(Origin::Original(v));
    }
    for i in 0..n {
        let nbrs = base.out_neighbors(i);
        for j in 1..=f {
            arcs.push((i, aux_id(i, j)));
            for l in 0..f {
                arcs.push((aux_id(i, j), nbrs[((j - 1) * f + l) as usize]));
            }
        }
    }
    for i in 0..n {
        for j in 1..=f {
            origin.push(Origin::SplitAux { i, j });
        }
    }
    // Aux tags were appended i-major, j-minor: tag order matches aux_id.
    let gadget = Digraph::from_arcs(gadget_n, arcs).expect("split gadget arcs are valid");
    assert_eq!(gadget.n() as u64, n as u64 * (1 + f as u64), "vertex-count formula");
    assert_eq!(
        gadget.arc_count(),
        n as u64 * f as u64 + n as u64 * f as u64 * f as u64,
        "arc-count formula"
    );
    Ok(OriginMap {
        base: base.clone(),
        gadget,
        origin,
        kind: GadgetKind::Split { f },
        certified: true,
    })
}

/// Builds the tower gadget: per base vertex `v_i`, fresh layers `U_{i,j}` of
/// size `d` for `3 <= j <= s-1`, with `U_{i,s}` being the first `d`
/// out-neighbors of `v_i` in ascending id order; arcs `v_i -> U_{i,3}` and a
/// copy of the expander from each layer to the next (slot order), directed
/// upward. Base arcs are not kept.
pub fn tower_gadget(base: &Digraph, params: &TowerParams) -> Result<OriginMap, GadgetError> {
    let (s, k, d) = (params.s, params.k, params.d);
    let n = base.n();
    let actual = (0..n).map(|v| base.out_degree(v)).min().unwrap_or(0);
    if (actual as u64) < d {
        return Err(GadgetError::MinOutDegreeTooLow { required: d, actual });
    }
    let layers = (s - 3) as u64; // fresh layers per base vertex: j = 3..=s-1
    let gadget_n64 = n as u64 + n as u64 * layers * d;
    let gadget_n = u32::try_from(gadget_n64).expect("gadget fits u32 vertex ids");
    let aux_id = |i: u32, j: u32, slot: u64| -> u32 {
        let block = i as u64 * layers + (j as u64 - 3);
        (n as u64 + block * d + slot) as u32
    };
    let mut origin = Vec::with_capacity(gadget_n as usize);
    for v in 0..n {
        origin.push(Origin::Original(v));
    }
    for i in 0..n {
        for j in 3..s {
            for slot in 0..d {
                origin.push(Origin::TowerAux { i, j, slot: slot as u32 });
            }
        }
    }
    let mut arcs = Vec::with_capacity((n as u64 * d + n as u64 * layers * d * k as u64) as usize);
    for i in 0..n {
        let chosen = &base.out_neighbors(i)[..d as usize];
        for slot in 0..d {
            arcs.push((i, aux_id(i, 3, slot)));
        }
        for j in 3..s {
            for a in 0..d {
                let from = aux_id(i, j, a);
                for &b in params.g.neighbors(a as u32) {
                    let to = if j + 1 < s {
                        aux_id(i, j + 1, b as u64)
                    } else {
                        chosen[b as usize]
                    };
                    arcs.push((from, to));
                }
            }
        }
    }
    let gadget = Digraph::from_arcs(gadget_n, arcs).expect("tower gadget arcs are valid");
    assert_eq!(gadget.n() as u64, n as u64 + n as u64 * layers * d, "vertex-count formula");
    assert_eq!(
        gadget.arc_count(),
        n as u64 * d + n as u64 * layers * d * k as u64,
        "arc-count formula"
    );
    Ok(OriginMap {
        base: base.clone(),
        gadget,
        origin,
        kind: GadgetKind::Tower { s, k, d },
        certified: params.certified,
    })
}

/// Projects a gadget vertex set to the base digraph: the base vertices whose
/// `Original` tag lies in `wp`.
pub fn project(om: &OriginMap, wp: &VertexSet) -> VertexSet {
    assert_eq!(wp.universe(), om.gadget.n(), "universe mismatch");
    let mut w = VertexSet::empty(om.base.n());
    for v in wp.iter() {
        if let Origin::Original(b) = om.origin[v as usize] {
            w.insert(b);
        }
    }
    w
}

/// How a lift check failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftViolation {
    /// The projected set is empty.
    EmptyProjection,
    /// A projected vertex falls short of the target threshold.
    LowDegree { vertex: u32, degree: u32, required: u32 },
}

/// Outcome of a lift check. `certified` is inherited from the gadget; an
/// uncertified gadget can still be checked, but a holding verdict is a
/// report, not a guarantee.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftVerdict {
    pub holds: bool,
    pub certified: bool,
    pub violation: Option<LiftViolation>,
}

fn evaluate_lift(om: &OriginMap, wp: &VertexSet, target: u32) -> LiftVerdict {
    let w = project(om, wp);
    if w.is_empty() {
        return LiftVerdict {
            holds: false,
            certified: om.certified,
            violation: Some(LiftViolation::EmptyProjection),
        };
    }
    for v in w.iter() {
        let deg = om
            .base
            .out_neighbors(v)
            .iter()
            .filter(|&&u| w.contains(u))
            .count() as u32;
        if deg < target {
            return LiftVerdict {
                holds: false,
                certified: om.certified,
                violation: Some(LiftViolation::LowDegree { vertex: v, degree: deg, required: target }),
            };
        }
    }
    LiftVerdict { holds: true, certified: om.certified, violation: None }
}

fn require_hypothesis(om: &OriginMap, wp: &VertexSet, level: u32) -> Result<(), GadgetError> {
    let deg = min_out_degree(&om.gadget, wp)?;
    if deg < level {
        return Err(GadgetError::HypothesisNotMet { required: level, actual: deg });
    }
    Ok(())
}

/// Checks the split-gadget lifting claim on `wp`: given min out-degree
/// `level` (1 or 2) inside the gadget, the projection must be non-empty with
/// min out-degree 1 (level 1) or 4 (level 2) in the base.
pub fn check_lift_a(om: &OriginMap, wp: &VertexSet, level: u32) -> Result<LiftVerdict, GadgetError> {
    match om.kind {
        GadgetKind::Split { .. } => {}
        other => {
            return Err(GadgetError::WrongKind { expected: "split", found: other.name() })
        }
    }
    let target = match level {
        1 => 1,
        2 => 4,
        _ => return Err(GadgetError::InvalidLevel { level, allowed: "1 or 2" }),
    };
    require_hypothesis(om, wp, level)?;
    Ok(evaluate_lift(om, wp, target))
}

/// Checks the tower-gadget lifting claim on `wp`: given min out-degree
/// `level` (1 or 3) inside the gadget, the projection must be non-empty with
/// min out-degree 1 (level 1) or `s` (level 3) in the base.
pub fn check_lift_b(om: &OriginMap, wp: &VertexSet, level: u32) -> Result<LiftVerdict, GadgetError> {
    let s = match om.kind {
        GadgetKind::Tower { s, .. } => s,
        other => {
            return Err(GadgetError::WrongKind { expected: "tower", found: other.name() })
        }
    };
    let target = match level {
        1 => 1,
        3 => s,
        _ => return Err(GadgetError::InvalidLevel { level, allowed: "1 or 3" }),
    };
    require_hypothesis(om, wp, level)?;
    Ok(evaluate_lift(om, wp, target))
}

/// `f²`: the certified upper bound on the four-threshold value (hence on the
/// three-threshold value, by monotonicity) under the hypothesis that the
/// two-threshold bound equals `f`.
pub fn chain_bound(f2b2: u32) -> u64 {
    (f2b2 as u64) * (f2b2 as u64)
}

/// Bound labeling: both-sided thresholds (`b(x) = x`) or one-sided
/// (`b(x) = 1`). The gadget topology is identical either way; only the
/// reported bound differs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundMode {
    BothSides,
    OneSide,
}

/// The strict upper bound `(e²/3) · f2b2⁶ · max(s, t)` as a certified
/// bracket.
pub fn f_bound(f2b2: u32, s: u32, t: u32, mode: BoundMode) -> Result<Bracket, GadgetError> {
    if f2b2 < 1 {
        return Err(GadgetError::FTooSmall);
    }
    if s < 1 || t < 1 {
        return Err(GadgetError::ZeroThreshold);
    }
    if mode == BoundMode::OneSide && t != 1 {
        return Err(GadgetError::ModeNeedsTOne(t));
    }
    let f2 = f2b2 as u64 * f2b2 as u64;
    Ok(Bracket::e_squared()
        .mul_u64(f2)
        .mul_u64(f2)
        .mul_u64(f2)
        .mul_u64(s.max(t) as u64)
        .div_u64(3))
}

/// Per-trial record of a lift fuzz campaign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftTrial {
    pub index: u64,
    pub w0_len: u32,
    pub core_len: u32,
    pub skipped: bool,
    pub holds: bool,
}

/// Aggregate result of a lift fuzz campaign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftFuzz {
    pub level: u32,
    pub trials: Vec<LiftTrial>,
    pub checked: u64,
    pub skipped: u64,
    pub violations: u64,
}

impl LiftFuzz {
    pub fn pass(&self) -> bool {
        self.violations == 0
    }

    pub fn skip_rate(&self) -> f64 {
        if self.trials.is_empty() {
            return 0.0;
        }
        self.skipped as f64 / self.trials.len() as f64
    }
}

/// Draws one fuzz subset. Uniform-density subsets almost always peel to an
/// empty core in layered gadgets, so the mixture includes high densities and
/// an all-minus-deletions variant.
fn sample_w0(rng: &mut SplitMix64, n: u32) -> VertexSet {
    match rng.next_below(5) {
        v @ 0..=3 => {
            let pct = [25u64, 50, 75, 90][v as usize];
            let mut w = VertexSet::empty(n);
            for x in 0..n {
                if rng.next_below(100) < pct {
                    w.insert(x);
                }
            }
            w
        }
        _ => {
            let mut w = VertexSet::full(n);
            let deletions = 1 + rng.next_below((n as u64 / 8).max(1));
            for _ in 0..deletions {
                w.remove(rng.next_below(n as u64) as u32);
            }
            w
        }
    }
}

/// Runs `trials` core-closure lift checks: draw a random subset, close it to
/// the `level`-out-core inside the gadget, skip empty cores, and check the
/// lifting conclusion on the rest. Trial records are ordered by index.
pub fn run_lift_fuzz(
    om: &OriginMap,
    level: u32,
    trials: u64,
    seed: Seed,
) -> Result<LiftFuzz, GadgetError> {
    // Validate the level against the gadget kind up front.
    match om.kind {
        GadgetKind::Split { .. } if level != 1 && level != 2 => {
            return Err(GadgetError::InvalidLevel { level, allowed: "1 or 2" })
        }
        GadgetKind::Tower { .. } if level != 1 && level != 3 => {
            return Err(GadgetError::InvalidLevel { level, allowed: "1 or 3" })
        }
        _ => {}
    }
    let n = om.gadget.n();
    let records: Vec<LiftTrial> = (0..trials)
        .into_par_iter()
        .map(|index| {
            let mut rng = SplitMix64::new(seed.derive(index));
            let w0 = sample_w0(&mut rng, n);
            let core = out_core(&om.gadget, &w0, level);
            if core.is_empty() {
                return LiftTrial {
                    index,
                    w0_len: w0.len(),
                    core_len: 0,
                    skipped: true,
                    holds: true,
                };
            }
            let verdict = match om.kind {
                GadgetKind::Split { .. } => check_lift_a(om, &core, level),
                GadgetKind::Tower { .. } => check_lift_b(om, &core, level),
            }
            .expect("core closure satisfies the hypothesis");
            LiftTrial {
                index,
                w0_len: w0.len(),
                core_len: core.len(),
                skipped: false,
                holds: verdict.holds,
            }
        })
        .collect();
    let skipped = records.iter().filter(|r| r.skipped).count() as u64;
    let checked = records.len() as u64 - skipped;
    let violations = records.iter().filter(|r| !r.skipped && !r.holds).count() as u64;
    Ok(LiftFuzz { level, trials: records, checked, skipped, violations })
}

/// Result of checking the lifting claim on every subset of the gadget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExhaustiveLift {
    pub subsets: u64,
    /// Subsets meeting the level-1 hypothesis, and violations among them.
    pub level1_checked: u64,
    pub level1_violations: u64,
    /// Subsets meeting the higher-level hypothesis (2 for split, 3 for
    /// tower), and violations among them.
    pub high_checked: u64,
    pub high_violations: u64,
}

impl ExhaustiveLift {
    pub fn pass(&self) -> bool {
        self.level1_violations == 0 && self.high_violations == 0
    }
}

/// Checks both parts of the lifting claim on all `2^|V|` subsets of a small
/// gadget.
pub fn exhaustive_lift_check(om: &OriginMap) -> Result<ExhaustiveLift, GadgetError> {
    let n = om.gadget.n();
    if n > 25 {
        return Err(GadgetError::TooLargeForExhaustive(n));
    }
    let high_level = match om.kind {
        GadgetKind::Split { .. } => 2,
        GadgetKind::Tower { .. } => 3,
    };
    let total = 1u64 << n;
    let counts = (0..total)
        .into_par_iter()
        .map(|mask| {
            let wp = VertexSet::from_ids(n, (0..n).filter(|&v| mask >> v & 1 == 1));
            if wp.is_empty() {
                return (0u64, 0u64, 0u64, 0u64);
            }
            let deg = min_out_degree(&om.gadget, &wp).expect("non-empty");
            let mut c = (0, 0, 0, 0);
            if deg >= 1 {
                let verdict = match om.kind {
                    GadgetKind::Split { .. } => check_lift_a(om, &wp, 1),
                    GadgetKind::Tower { .. } => check_lift_b(om, &wp, 1),
                }
                .expect("hypothesis checked");
                c.0 = 1;
                c.1 = if verdict.holds { 0 } else { 1 };
            }
            if deg >= high_level {
                let verdict = match om.kind {
                    GadgetKind::Split { .. } => check_lift_a(om, &wp, high_level),
                    GadgetKind::Tower { .. } => check_lift_b(om, &wp, high_level),
                }
                .expect("hypothesis checked");
                c.2 = 1;
                c.3 = if verdict.holds { 0 } else { 1 };
            }
            c
        })
        .reduce(
            || (0, 0, 0, 0),
            |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2, a.3 + b.3),
        );
    Ok(ExhaustiveLift {
        subsets: total,
        level1_checked: counts.0,
        level1_violations: counts.1,
        high_checked: counts.2,
        high_violations: counts.3,
    })
}

/// Full structural audit of a gadget against the closed-form size and degree
/// formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetAudit {
    pub vertices: u64,
    pub expected_vertices: u64,
    pub arcs: u64,
    pub expected_arcs: u64,
    pub min_out_degree: u32,
    pub expected_min_out_degree: u32,
    pub degrees_exact: bool,
    pub aux_acyclic: bool,
}

impl GadgetAudit {
    pub fn pass(&self) -> bool {
        self.vertices == self.expected_vertices
            && self.arcs == self.expected_arcs
            && self.min_out_degree == self.expected_min_out_degree
            && self.degrees_exact
            && self.aux_acyclic
    }
}

pub fn audit(om: &OriginMap) -> GadgetAudit {
    let n = om.base.n() as u64;
    let g = &om.gadget;
    let (expected_vertices, expected_arcs, expected_min) = match om.kind {
        GadgetKind::Split { f } => {
            let f = f as u64;
            (n * (1 + f), n * f + n * f * f, f as u32)
        }
        GadgetKind::Tower { s, k, d } => {
            let layers = (s - 3) as u64;
            (n + n * layers * d, n * d + n * layers * d * k as u64, k)
        }
    };
    let mut degrees_exact = true;
    for v in 0..g.n() {
        let expected = match (om.origin[v as usize], om.kind) {
            (Origin::Original(_), GadgetKind::Split { f }) => f as u64,
            (Origin::SplitAux { .. }, GadgetKind::Split { f }) => f as u64,
            (Origin::Original(_), GadgetKind::Tower { d, .. }) => d,
            (Origin::TowerAux { .. }, GadgetKind::Tower { k, .. }) => k as u64,
            _ => unreachable!("origin tag inconsistent with gadget kind"),
        };
        if g.out_degree(v) as u64 != expected {
            degrees_exact = false;
            break;
        }
    }
    let aux = om.aux_vertices();
    GadgetAudit {
        vertices: g.n() as u64,
        expected_vertices,
        arcs: g.arc_count(),
        expected_arcs,
        min_out_degree: (0..g.n()).map(|v| g.out_degree(v)).min().unwrap_or(0),
        expected_min_out_degree: expected_min,
        degrees_exact,
        aux_acyclic: crate::digraph::is_acyclic(g, &aux),
    }
}

/// Origin-map text format: one line per gadget vertex, ascending id:
/// `g O v` (original), `g S i j` (split aux), or `g T i j slot` (tower aux).
pub fn emit_origin_map(om: &OriginMap) -> String {
    let mut out = String::new();
    for (g, tag) in om.origin.iter().enumerate() {
        match tag {
            Origin::Original(v) => out.push_str(&format!("{g} O {v}\n")),
            Origin::SplitAux { i, j } => out.push_str(&format!("{g} S {i} {j}\n")),
            Origin::TowerAux { i, j, slot } => out.push_str(&format!("{g} T {i} {j} {slot}\n")),
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct OriginParseError {
    pub line: usize,
    pub msg: String,
}

/// Parses the origin-map text format back into tags (ids must be `0..n` in
/// order).
pub fn parse_origin_tags(text: &str) -> Result<Vec<Origin>, OriginParseError> {
    let mut tags = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = l.split_ascii_whitespace().collect();
        let fail = |msg: &str| OriginParseError { line, msg: msg.to_string() };
        let gid: usize = toks
            .first()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| fail("missing gadget id"))?;
        if gid != tags.len() {
            return Err(fail(&format!("expected gadget id {}, got {gid}", tags.len())));
        }
        let parse_u32 = |t: Option<&&str>| -> Result<u32, OriginParseError> {
            t.and_then(|t| t.parse().ok()).ok_or_else(|| fail("malformed field"))
        };
        match toks.get(1) {
            Some(&"O") if toks.len() == 3 => {
                tags.push(Origin::Original(parse_u32(toks.get(2))?));
            }
            Some(&"S") if toks.len() == 4 => {
                tags.push(Origin::SplitAux {
                    i: parse_u32(toks.get(2))?,
                    j: parse_u32(toks.get(3))?,
                });
            }
            Some(&"T") if toks.len() == 5 => {
                tags.push(Origin::TowerAux {
                    i: parse_u32(toks.get(2))?,
                    j: parse_u32(toks.get(3))?,
                    slot: parse_u32(toks.get(4))?,
                });
            }
            _ => return Err(fail("expected \"g O v\", \"g S i j\", or \"g T i j slot\"")),
        }
    }
    Ok(tags)
}
