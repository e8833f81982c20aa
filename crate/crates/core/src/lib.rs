//! Configuration spaces of robots on complete bipartite graphs.
//!
//! The crate builds `Conf_r(n, N)` as a cube complex, extracts vertex links
//! and chessboard complexes, and computes exact reduced integer homology.

pub mod confspace;
pub mod covers;
pub mod error;
pub mod homology;
pub mod params;
pub mod report;
pub mod simplicial;
pub mod verify;

pub use error::{Error, Result};
pub use params::{Parameters, SolutionType};
