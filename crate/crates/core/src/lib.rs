//! Exact counting of connected and dominating connected vertex sets in
//! regular graphs, transfer-matrix growth rates for glued graph families,
//! and exhaustive extremal searches over small regular graphs.

pub mod canon;
pub mod cli;
pub mod counting;
pub mod error;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod search;
pub mod transfer;

pub use counting::{BigCount, CountMode, CountResult, Engine};
pub use error::{Error, Result};
pub use families::Gadget;
pub use graph::{Graph, VertexSet};
pub use graph6::{parse_graph6, to_graph6};
