//! Packing and covering of minor models, balanced separations, the recursive
//! hitting-set algorithm, win/win certificates and the treewidth bound formulas.

pub mod bounds;
mod certificate;
mod hitting;
mod pack_cover;
mod separation;

pub use bounds::{bound_th1, bound_th2, bound_th2_proof_variant, kostochka_threshold, BoundParams, Th1Bound};
pub use certificate::{
    epgap_winwin, k2r_order, pattern_bound, verify_certificate, BoundReport, Certificate, TwCase, WinWin,
};
pub use hitting::{hitting_set_recursive, HittingSet, RecursionStep};
pub use pack_cover::{cover_exact, pack_exact};
pub use separation::{balanced_separation, verify_separation, BalancedSeparation, Separation};
