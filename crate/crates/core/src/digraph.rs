//! Simple directed graphs with out-adjacency, induced-subgraph degree
//! arithmetic, out-degree peeling, and the text format shared by all tools.
//!
//! Digraphs are immutable after construction: every "modification" builds a
//! new graph, so values can be shared freely across worker threads. Vertices
//! are `0..n`. Self-loops and parallel arcs are rejected; digons (a pair of
//! opposite arcs) are allowed.

use std::fmt;

use thiserror::Error;

/// Construction errors for [`Digraph`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {v} out of range (n = {n})")]
    VertexOutOfRange { v: u32, n: u32 },
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate arc {0} -> {1}")]
    DuplicateArc(u32, u32),
}

/// Errors from induced-degree queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeError {
    #[error("empty vertex set")]
    EmptySet,
    #[error("vertex set universe {set} does not match graph order {graph}")]
    UniverseMismatch { set: u32, graph: u32 },
}

/// `(s, t)` out-degree thresholds for a splitting instance: part A must
/// induce minimum out-degree at least `s`, part B at least `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SplitSpec {
    s: u32,
    t: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("split thresholds must be at least 1 (got s = {s}, t = {t})")]
pub struct InvalidSpec {
    pub s: u32,
    pub t: u32,
}

impl SplitSpec {
    pub fn new(s: u32, t: u32) -> Result<Self, InvalidSpec> {
        if s < 1 || t < 1 {
            return Err(InvalidSpec { s, t });
        }
        Ok(SplitSpec { s, t })
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// The same instance with the roles of the two parts exchanged.
    pub fn swapped(&self) -> SplitSpec {
        SplitSpec { s: self.t, t: self.s }
    }
}

impl fmt::Display for SplitSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.s, self.t)
    }
}

/// Immutable simple directed graph in compressed adjacency form.
///
/// Out-neighbor lists are strictly increasing, which both rules out parallel
/// arcs and makes membership tests a binary search.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: u32,
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Digraph {
    /// Builds a digraph from an arc list. Arcs may be given in any order;
    /// they are validated and sorted lexicographically.
    pub fn from_arcs(n: u32, mut arcs: Vec<(u32, u32)>) -> Result<Self, GraphError> {
        for &(u, v) in &arcs {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
        }
        arcs.sort_unstable();
        for w in arcs.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateArc(w[0].0, w[0].1));
            }
        }
        let mut offsets = Vec::with_capacity(n as usize + 1);
        let mut targets = Vec::with_capacity(arcs.len());
        let mut idx = 0;
        offsets.push(0);
        for u in 0..n {
            while idx < arcs.len() && arcs[idx].0 == u {
                targets.push(arcs[idx].1);
                idx += 1;
            }
            offsets.push(targets.len());
        }
        Ok(Digraph { n, offsets, targets })
    }

    /// Number of vertices.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of arcs.
    pub fn arc_count(&self) -> u64 {
        self.targets.len() as u64
    }

    /// Out-neighbors of `v` in increasing order.
    pub fn out_neighbors(&self, v: u32) -> &[u32] {
        &self.targets[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn out_degree(&self, v: u32) -> u32 {
        (self.offsets[v as usize + 1] - self.offsets[v as usize]) as u32
    }

    pub fn has_arc(&self, u: u32, v: u32) -> bool {
        self.out_neighbors(u).binary_search(&v).is_ok()
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n).flat_map(move |u| self.out_neighbors(u).iter().map(move |&v| (u, v)))
    }

    /// In-neighbor lists, built on demand (the graph itself only stores
    /// out-adjacency).
    pub fn reverse_adjacency(&self) -> Vec<Vec<u32>> {
        let mut rev = vec![Vec::new(); self.n as usize];
        for (u, v) in self.arcs() {
            rev[v as usize].push(u);
        }
        rev
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, m={})", self.n, self.arc_count())
    }
}

/// A set of vertices of a fixed host graph, stored as a bitset.
///
/// The universe is the host's vertex count; operations on mismatched
/// universes panic, since mixing sets across graphs is a programming error.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: u32,
    blocks: Vec<u64>,
    len: u32,
}

impl VertexSet {
    pub fn empty(universe: u32) -> Self {
        VertexSet {
            universe,
            blocks: vec![0; (universe as usize).div_ceil(64)],
            len: 0,
        }
    }

    pub fn full(universe: u32) -> Self {
        let mut s = Self::empty(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    pub fn from_ids<I: IntoIterator<Item = u32>>(universe: u32, ids: I) -> Self {
        let mut s = Self::empty(universe);
        for v in ids {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> u32 {
        self.universe
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Inserts `v`; returns true if it was not already present.
    pub fn insert(&mut self, v: u32) -> bool {
        assert!(v < self.universe, "vertex {} outside universe {}", v, self.universe);
        let (blk, bit) = (v as usize / 64, v % 64);
        let mask = 1u64 << bit;
        if self.blocks[blk] & mask == 0 {
            self.blocks[blk] |= mask;
            self.len += 1;
            true
        } else {
            false
        }
    }

    /// Removes `v`; returns true if it was present.
    pub fn remove(&mut self, v: u32) -> bool {
        assert!(v < self.universe, "vertex {} outside universe {}", v, self.universe);
        let (blk, bit) = (v as usize / 64, v % 64);
        let mask = 1u64 << bit;
        if self.blocks[blk] & mask != 0 {
            self.blocks[blk] &= !mask;
            self.len -= 1;
            true
        } else {
            false
        }
    }

    pub fn contains(&self, v: u32) -> bool {
        v < self.universe && self.blocks[v as usize / 64] & (1u64 << (v % 64)) != 0
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        let blocks: Vec<u64> = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a | b)
            .collect();
        let len = blocks.iter().map(|b| b.count_ones()).sum();
        VertexSet { universe: self.universe, blocks, len }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        let blocks: Vec<u64> = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a & b)
            .collect();
        let len = blocks.iter().map(|b| b.count_ones()).sum();
        VertexSet { universe: self.universe, blocks, len }
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.blocks.iter().enumerate().flat_map(|(i, &blk)| {
            let base = i as u32 * 64;
            let mut rest = blk;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let bit = rest.trailing_zeros();
                    rest &= rest - 1;
                    Some(base + bit)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

fn check_universe(d: &Digraph, w: &VertexSet) -> Result<(), DegreeError> {
    if w.universe() != d.n() {
        return Err(DegreeError::UniverseMismatch { set: w.universe(), graph: d.n() });
    }
    Ok(())
}

/// Minimum out-degree of the subdigraph induced on `w`:
/// min over `v` in `w` of `|N+(v) ∩ w|`.
pub fn min_out_degree(d: &Digraph, w: &VertexSet) -> Result<u32, DegreeError> {
    check_universe(d, w)?;
    if w.is_empty() {
        return Err(DegreeError::EmptySet);
    }
    let mut best = u32::MAX;
    for v in w.iter() {
        let deg = d.out_neighbors(v).iter().filter(|&&u| w.contains(u)).count() as u32;
        best = best.min(deg);
        if best == 0 {
            break;
        }
    }
    Ok(best)
}

/// Maximum out-degree over all vertices (0 for the empty graph).
pub fn max_out_degree(d: &Digraph) -> u32 {
    (0..d.n()).map(|v| d.out_degree(v)).max().unwrap_or(0)
}

/// The unique maximal subset `C ⊆ w` with `min_out_degree(d, C) >= s`
/// (possibly empty), computed by worklist peeling.
///
/// Order-independence: if two sets both induce min out-degree `>= s`, so does
/// their union, hence the maximal such subset is unique and any deletion
/// order reaches it.
pub fn out_core(d: &Digraph, w: &VertexSet, s: u32) -> VertexSet {
    assert_eq!(w.universe(), d.n(), "universe mismatch");
    if s == 0 {
        return w.clone();
    }
    let mut alive = w.clone();
    let mut deg = vec![0u32; d.n() as usize];
    let mut queue = Vec::new();
    for v in w.iter() {
        let dv = d.out_neighbors(v).iter().filter(|&&u| w.contains(u)).count() as u32;
        deg[v as usize] = dv;
        if dv < s {
            queue.push(v);
        }
    }
    if queue.is_empty() {
        return alive;
    }
    let rev = d.reverse_adjacency();
    while let Some(v) = queue.pop() {
        if !alive.remove(v) {
            continue;
        }
        for &u in &rev[v as usize] {
            if alive.contains(u) {
                deg[u as usize] -= 1;
                if deg[u as usize] == s - 1 {
                    queue.push(u);
                }
            }
        }
    }
    alive
}

/// True iff the subdigraph induced on `w` has no directed cycle.
///
/// Implemented by three-color DFS, deliberately not via [`out_core`]: the
/// equivalence `is_acyclic(d, w) <=> out_core(d, w, 1).is_empty()` is checked
/// in tests as a cross-route property.
pub fn is_acyclic(d: &Digraph, w: &VertexSet) -> bool {
    assert_eq!(w.universe(), d.n(), "universe mismatch");
    const WHITE: u8 = 0;
    const GRAY: u8 = 1;
    const BLACK: u8 = 2;
    let mut color = vec![WHITE; d.n() as usize];
    let mut stack: Vec<(u32, usize)> = Vec::new();
    for start in w.iter() {
        if color[start as usize] != WHITE {
            continue;
        }
        color[start as usize] = GRAY;
        stack.push((start, 0));
        while let Some(&(v, next)) = stack.last() {
            let nbrs = d.out_neighbors(v);
            if next == nbrs.len() {
                color[v as usize] = BLACK;
                stack.pop();
                continue;
            }
            stack.last_mut().unwrap().1 += 1;
            let u = nbrs[next];
            if !w.contains(u) {
                continue;
            }
            match color[u as usize] {
                GRAY => return false,
                WHITE => {
                    color[u as usize] = GRAY;
                    stack.push((u, 0));
                }
                _ => {}
            }
        }
    }
    true
}

/// Parse errors carry the 1-based line number of the offending input line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing header (expected \"n m\")")]
    MissingHeader,
    #[error("malformed header (expected \"n m\")")]
    BadHeader,
    #[error("malformed arc line (expected \"u v\")")]
    BadArc,
    #[error("vertex {v} out of range (n = {n})")]
    VertexOutOfRange { v: u64, n: u32 },
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate arc {0} -> {1}")]
    DuplicateArc(u32, u32),
    #[error("expected {expected} arcs, found {found}")]
    ArcCount { expected: u64, found: u64 },
    #[error("header declares {n} vertices, over the parser limit of {limit}")]
    TooManyVertices { n: u64, limit: u64 },
}

fn parse_err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Vertex-count ceiling for parsed documents: enough for any instance this
/// toolkit can process, small enough that a typo'd header cannot trigger a
/// multi-gigabyte allocation.
pub const PARSE_VERTEX_LIMIT: u64 = 10_000_000;

/// Parses the digraph text format: optional `#` comment lines anywhere, a
/// header line `n m`, then exactly `m` lines `u v` (arc `u -> v`).
///
/// Parsing is whitespace-tolerant; [`emit_digraph`] produces the canonical
/// form (no comments, arcs sorted lexicographically, LF endings).
pub fn parse_digraph(text: &str) -> Result<Digraph, ParseError> {
    let mut header: Option<(u32, u64)> = None;
    let mut arcs: Vec<(u32, u32)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_ascii_whitespace();
        match header {
            None => {
                let n: u64 = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err(line_no, ParseErrorKind::BadHeader))?;
                let m: u64 = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err(line_no, ParseErrorKind::BadHeader))?;
                if it.next().is_some() {
                    return Err(parse_err(line_no, ParseErrorKind::BadHeader));
                }
                if n > PARSE_VERTEX_LIMIT {
                    return Err(parse_err(
                        line_no,
                        ParseErrorKind::TooManyVertices { n, limit: PARSE_VERTEX_LIMIT },
                    ));
                }
                header = Some((n as u32, m));
            }
            Some((n, m)) => {
                if (arcs.len() as u64) == m {
                    return Err(parse_err(
                        line_no,
                        ParseErrorKind::ArcCount { expected: m, found: m + 1 },
                    ));
                }
                let u: u64 = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err(line_no, ParseErrorKind::BadArc))?;
                let v: u64 = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err(line_no, ParseErrorKind::BadArc))?;
                if it.next().is_some() {
                    return Err(parse_err(line_no, ParseErrorKind::BadArc));
                }
                if u >= n as u64 {
                    return Err(parse_err(line_no, ParseErrorKind::VertexOutOfRange { v: u, n }));
                }
                if v >= n as u64 {
                    return Err(parse_err(line_no, ParseErrorKind::VertexOutOfRange { v, n }));
                }
                let (u, v) = (u as u32, v as u32);
                if u == v {
                    return Err(parse_err(line_no, ParseErrorKind::SelfLoop(u)));
                }
                if !seen.insert((u, v)) {
                    return Err(parse_err(line_no, ParseErrorKind::DuplicateArc(u, v)));
                }
                arcs.push((u, v));
            }
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(last_line, ParseErrorKind::MissingHeader))?;
    if arcs.len() as u64 != m {
        return Err(parse_err(
            last_line,
            ParseErrorKind::ArcCount { expected: m, found: arcs.len() as u64 },
        ));
    }
    // Range, loop, and duplicate checks already done line by line.
    Ok(Digraph::from_arcs(n, arcs).expect("arc list validated during parse"))
}

/// Emits the canonical text form: `n m` header, then arcs in lexicographic
/// order, one per line, LF endings, no comments.
pub fn emit_digraph(d: &Digraph) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", d.n(), d.arc_count()));
    for (u, v) in d.arcs() {
        out.push_str(&format!("{} {}\n", u, v));
    }
    out
}
