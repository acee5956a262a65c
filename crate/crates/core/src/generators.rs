//! Seedable generators for the test families: complete digraphs, directed
//! cycles, quadratic-residue tournaments, and random digraphs of prescribed
//! minimum out-degree.
//!
//! All randomness flows through [`SplitMix64`], so a (seed, parameters) pair
//! produces the same graph on every platform. The generator is pinned in the
//! README's format notes; changing it would invalidate recorded experiments.

use thiserror::Error;

use crate::digraph::Digraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("need at least {min} vertices (got {n})")]
    TooFewVertices { n: u32, min: u32 },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{0} is not congruent to 3 mod 4")]
    WrongResidueClass(u32),
    #[error("out-degree {delta} out of range for {n} vertices")]
    DegreeOutOfRange { n: u32, delta: u32 },
}

/// A 64-bit seed. Identical seed and parameters give identical output
/// everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Seed(pub u64);

impl Seed {
    /// The sub-seed for trial `index`: the `index`-th output of the
    /// SplitMix64 stream seeded with `self`. Used to give parallel trials
    /// independent, reproducible randomness.
    pub fn derive(self, index: u64) -> Seed {
        let state = self.0.wrapping_add(GOLDEN.wrapping_mul(index.wrapping_add(1)));
        Seed(mix(state))
    }
}

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Seed(v)
    }
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// SplitMix64: state advances by the 64-bit golden ratio, outputs are the
/// mixed state (Steele, Lea & Flood's variant).
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: Seed) -> Self {
        SplitMix64 { state: seed.0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix(self.state)
    }

    /// Uniform draw from `0..bound` by rejection, so there is no modulo bias.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    /// Uniform `k`-subset of `pool` by partial Fisher-Yates: after `k` swap
    /// steps the prefix is a uniform ordered sample, and forgetting the order
    /// gives a uniform subset. Returns the chosen elements sorted.
    ///
    /// The pool is scrambled in place; callers reuse it as scratch.
    pub fn k_subset(&mut self, pool: &mut [u32], k: usize) -> Vec<u32> {
        assert!(k <= pool.len());
        let len = pool.len();
        for i in 0..k {
            let j = i + self.next_below((len - i) as u64) as usize;
            pool.swap(i, j);
        }
        let mut picked = pool[..k].to_vec();
        picked.sort_unstable();
        picked
    }
}

/// Complete digraph: all `n(n-1)` ordered pairs are arcs.
pub fn complete_digraph(n: u32) -> Result<Digraph, GeneratorError> {
    if n < 1 {
        return Err(GeneratorError::TooFewVertices { n, min: 1 });
    }
    let mut arcs = Vec::with_capacity(n as usize * (n as usize - 1));
    for u in 0..n {
        for v in 0..n {
            if u != v {
                arcs.push((u, v));
            }
        }
    }
    Ok(Digraph::from_arcs(n, arcs).expect("complete digraph is valid"))
}

/// Directed cycle: arcs `i -> (i+1 mod n)`.
pub fn directed_cycle(n: u32) -> Result<Digraph, GeneratorError> {
    if n < 2 {
        return Err(GeneratorError::TooFewVertices { n, min: 2 });
    }
    let arcs = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(Digraph::from_arcs(n, arcs).expect("cycle is valid"))
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Quadratic-residue tournament on a prime `p ≡ 3 (mod 4)`: arc `u -> v` iff
/// `v - u` is a nonzero square mod `p`. Since `-1` is a non-residue for such
/// `p`, exactly one of each opposite pair is an arc and every out-degree is
/// `(p-1)/2`.
pub fn paley_tournament(p: u32) -> Result<Digraph, GeneratorError> {
    if !is_prime(p) {
        return Err(GeneratorError::NotPrime(p));
    }
    if p % 4 != 3 {
        return Err(GeneratorError::WrongResidueClass(p));
    }
    let mut residue = vec![false; p as usize];
    for x in 1..p as u64 {
        residue[(x * x % p as u64) as usize] = true;
    }
    let mut arcs = Vec::with_capacity(p as usize * (p as usize - 1) / 2);
    for u in 0..p {
        for v in 0..p {
            if u != v && residue[((v + p - u) % p) as usize] {
                arcs.push((u, v));
            }
        }
    }
    Ok(Digraph::from_arcs(p, arcs).expect("tournament is valid"))
}

/// Random digraph with every out-degree exactly `delta`: each vertex's
/// out-neighborhood is an independent uniform `delta`-subset of the other
/// vertices.
pub fn random_digraph_min_outdeg(n: u32, delta: u32, seed: Seed) -> Result<Digraph, GeneratorError> {
    if delta < 1 || delta > n.saturating_sub(1) {
        return Err(GeneratorError::DegreeOutOfRange { n, delta });
    }
    let mut rng = SplitMix64::new(seed);
    let mut pool: Vec<u32> = Vec::with_capacity(n as usize - 1);
    let mut arcs = Vec::with_capacity(n as usize * delta as usize);
    for u in 0..n {
        pool.clear();
        pool.extend((0..n).filter(|&v| v != u));
        for v in rng.k_subset(&mut pool, delta as usize) {
            arcs.push((u, v));
        }
    }
    Ok(Digraph::from_arcs(n, arcs).expect("sampled arcs are valid"))
}
