//! Ball growth, sphere decay and Folner sequences on doubling graphs and on
//! groups of polynomial growth.
//!
//! Spaces are unit-edge graphs with counting measure ([`space`]). The
//! [`generators`] module builds lattice and Heisenberg Cayley graphs, stretched
//! tree chains and a stairway strip; [`walk`] computes exact product sets in
//! the groups; [`analysis`] estimates doubling and shell constants and checks
//! the resulting sphere bounds; [`ergodic`] computes ball averages of a torus
//! rotation; [`experiment`] ties everything to JSON configs and CSV output.

pub mod analysis;
pub mod ergodic;
pub mod error;
pub mod experiment;
pub mod generators;
pub mod space;
pub mod walk;

pub use error::{Error, Result};

/// Exact ratio type used for volume quotients.
pub type Rational = num_rational::Ratio<u64>;
