//! Shared instance builders for the benchmarks.

use splitlab_core::expander::{generate_verified, VerifiedKOut};
use splitlab_core::gadgets::{tower_gadget, OriginMap, TowerParams};
use splitlab_core::generators::{complete_digraph, random_digraph_min_outdeg};
use splitlab_core::{Digraph, Seed};

/// A sparse random digraph sized for core-peeling benchmarks.
pub fn peel_instance() -> Digraph {
    random_digraph_min_outdeg(2000, 8, Seed(42)).unwrap()
}

/// The expander consumed by the four-threshold tower.
pub fn verified_266() -> VerifiedKOut {
    generate_verified(266, 3, Seed(0), 20).expect("n=266 verifies within 20 tries")
}

/// The full-scale tower gadget over a complete base.
pub fn tower_267() -> OriginMap {
    let base = complete_digraph(267).unwrap();
    let params = TowerParams::new(4, verified_266()).unwrap();
    tower_gadget(&base, &params).unwrap()
}
