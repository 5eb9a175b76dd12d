//! Random graphs with interior (degree 3) and boundary (degree 1) vertices
//! built from good half-edge partitions, together with exact tools for
//! their spectra, Cheeger constants, first-moment bounds on small cuts and
//! constructive expander families.

pub mod bounds;
pub mod cheeger;
pub mod construct;
mod dsu;
pub mod error;
pub mod format;
pub mod graph;
pub mod rational;
pub mod rule;
pub mod sampler;
pub mod spectra;
mod subsets;

pub use error::{Error, Result};
pub use graph::{
    build_graph, connected_components, topology, validate_partition, HalfEdgePairing, MultiGraph,
    Role, Topology,
};
