//! Constructive auxiliary results and the extraction pipelines from meshes to disjoint models.

mod degree;
mod extract;
mod linkage;
mod partition;
pub mod planted;
mod pw2;
mod sequences;
mod trees;

pub use degree::{
    disjoint_multiedges, extract_k2r_from_degeneracy, low_degree_vertices, models_disjoint_and_valid,
    verify_multiedges,
};
pub use extract::{pairs_to_k2r_models, pairs_to_xi_models};
pub use linkage::{
    auxiliary_multigraph, linkage_to_pairs, mesh_to_linkage, verify_linkage, verify_paired_linkage, LinkageWitness,
    LinkedPair, PairedLinkage, TerminalTree,
};
pub use partition::{stiebitz_partition, stiebitz_run, stiebitz_run_from, verify_stiebitz, Partition, StiebitzRun};
pub use pw2::check_pw2_minor_of_xi;
pub use sequences::{erdos_szekeres, is_valid_monotone, Direction, Monotone};
pub use trees::{
    check_ternary_tree, long_path, long_path_bound, path_partition, tree_cut, tree_cut_bound, verify_path_partition,
    verify_tree_cut,
};
