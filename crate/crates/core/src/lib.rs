//! Exact minor packing and covering oracles, treewidth machinery, constructive
//! structural lemmas and win/win certificates for minor-based Erdős–Pósa bounds.
//!
//! Exact algorithms work on 64-bit vertex masks and refuse inputs above the
//! configured [`Limits`].

pub mod cli;
pub mod epd;
pub mod error;
pub mod graph;
pub mod harness;
pub mod io;
pub mod limits;
pub mod minors;
pub mod structure;
pub mod verdict;
pub mod width;

pub use error::{Error, Result};
pub use graph::{Graph, MultiGraph, VertexSet};
pub use limits::Limits;
pub use verdict::{Verdict, Violation};
