//! Combinatorics of Coxeter groups and buildings: chamber systems, boundary
//! directions, combinatorial sectors, transversal buildings and geodesic ray
//! bundles, checked exhaustively on truncated balls.

pub mod bundle;
pub mod chamber;
pub mod coxeter;
pub mod direction;
pub mod error;
pub mod harness;
pub mod instance;
pub mod sector;
pub mod transversal;

pub use error::{Error, Result};
