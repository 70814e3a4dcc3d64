//! Tree and path decompositions, exact treewidth/pathwidth, nice decompositions and meshes.

mod decomposition;
pub mod flow;
mod mesh;
mod nice;
mod pathwidth;
mod treewidth;

pub use decomposition::{decomposition_from_elimination, verify_decomposition, TreeDecomposition};
pub use mesh::{external_linkage_failure, find_mesh, verify_mesh, verify_mesh_structure, MeshWitness};
pub use nice::{make_nice, verify_nice, NiceTreeDecomposition, NodeKind};
pub use pathwidth::pathwidth_exact;
pub use treewidth::{min_fill_order, treewidth_exact, treewidth_lower_bound};
