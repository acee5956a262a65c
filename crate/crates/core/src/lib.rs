//! A laboratory for out-degree splitting of directed graphs: deterministic
//! generators for the standard test families, random bipartite k-out graphs
//! with exhaustively verified expansion, the two reduction gadgets with
//! origin tracking and runtime-checked lifting claims, closed-form bound
//! calculators backed by certified rational arithmetic, and an exact solver
//! that decides `(s, t)`-splittability of concrete instances.

pub mod certified;
pub mod digraph;
pub mod expander;
pub mod gadgets;
pub mod generators;
pub mod reference;
pub mod solver;

pub use digraph::{Digraph, SplitSpec, VertexSet};
pub use generators::Seed;
