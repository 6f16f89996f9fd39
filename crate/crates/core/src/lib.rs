//! Equitable colorings and clique factors of dense graphs under Ore-type
//! degree-sum conditions, with exact oracles for small instances.

pub mod absorber;
pub mod bitset;
pub mod cover;
pub mod decider;
pub mod enumerate;
pub mod error;
pub mod extremal;
pub mod generate;
pub mod graph;
pub mod io;
pub mod matching;
pub mod oracle;
pub mod par;
pub mod partition;
pub mod rational;
pub mod search;
pub mod sweep;
pub mod tiler;

pub use bitset::VertexSet;
pub use cover::{Coloring, LayeredFactor, Tiling, Violation};
pub use error::{Error, Result};
pub use graph::{Graph, Sigma};
