//! Genus-zero factorizations of a long cycle into pure cycles, their
//! factorization graphs, and the bijection with multi-noded rooted trees.
//!
//! Permutations act on `{1, …, d}` and compose right to left:
//! `(p ∘ q)(x) = p(q(x))`.

pub mod bijection;
pub mod dot;
pub mod error;
pub mod examples;
pub mod factorization;
pub mod graph;
pub mod json;
pub mod mnr;
pub mod perm;
pub mod verify;

pub use error::{Error, Result};
pub use factorization::{Factorization, FactorizationType};
pub use graph::{FactorizationGraph, SVertexSet, Violation};
pub use mnr::{LabeledMnr, MultiNodedRootedTree, PruferMatrix, RootedTree};
pub use perm::{Cycle, CycleType, Permutation};
