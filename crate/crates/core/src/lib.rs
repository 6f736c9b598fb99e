//! Dual graphs of totally degenerate semistable curves over a Henselian
//! discretely valued field, with the Galois action of a cyclic unramified
//! extension.
//!
//! The crate builds dual graphs with cyclic actions realizing every genus `g`
//! and index `I | 2g − 2`, reads the index and the full set of splitting
//! extensions off the graph, and checks those readings against a brute-force
//! blowup oracle.

pub mod action;
pub mod arith;
pub mod blowup;
pub mod constructions;
pub mod invariants;
pub mod model;
pub mod multigraph;
pub mod verify;

pub use action::{CyclicAction, Subgroup};
pub use constructions::construct;
pub use invariants::{Case, ExtensionSpec, SplittingReport};
pub use model::CurveModel;
pub use multigraph::{EdgeId, MultiGraph, VertexId};
