//! Builders for every space the library studies.

pub mod cayley;
pub mod group;
pub mod line;
pub mod stairway;
pub mod tree_chain;

pub use cayley::{cayley_ball, heisenberg_graph, lattice_graph, CayleyBall};
pub use group::{Element, GroupKind, GroupModel, MAX_RANK};
pub use line::{doubled_integers, subdivided_line};
pub use stairway::{midpoint_circle, stairway_curve, stairway_strip};
pub use tree_chain::{build_tree_chain, stretched_tree_chain, BlockInfo, TreeChain, TreeChainSpec};
