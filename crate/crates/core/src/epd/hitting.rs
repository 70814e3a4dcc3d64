use serde::{Deserialize, Serialize};

use super::pack_cover::{pack_limit, pack_within, SupportFamily};
use super::separation::split;
use crate::error::{Error, Result};
use crate::graph::{mask, Graph, VertexSet};
use crate::limits::Limits;
use crate::minors::find_model_masks;
use crate::width::{make_nice, treewidth_exact};

/// One separation step of the recursion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionStep {
    pub depth: usize,
    pub vertices: usize,
    pub pack: usize,
    pub width: usize,
    pub separator: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HittingSet {
    pub vertices: VertexSet,
    /// Packing number of the whole graph.
    pub pack: usize,
    pub width_budget: usize,
    /// `(2k − 1)(width_budget + 1)`: at most `2k − 1` separations happen, each of order at most `width + 1`.
    pub size_bound: usize,
    pub trace: Vec<RecursionStep>,
}

/// Hitting set built by recursive balanced separations.
///
/// With no model the answer is empty. Otherwise an optimal nice decomposition
/// yields a balanced separation `(A, B)`; the separator `A ∩ B` is taken and
/// both sides `G[A ∖ B]` and `G[B ∖ A]` are solved recursively. The result is
/// re-checked by minor search before it is returned.
pub fn hitting_set_recursive(g: &Graph, h: &Graph, width_budget: usize, limits: &Limits) -> Result<HittingSet> {
    if h.n() == 0 || !h.is_connected() {
        return Err(Error::Precondition("the pattern must be connected".into()));
    }
    Error::check_size("host vertices for packing/covering", g.n(), pack_limit(h, limits))?;
    Error::check_size("pattern vertices for minor search", h.n(), limits.minor_pattern)?;
    let adj = g.neighbor_masks()?;
    let full = mask::full(g.n());
    let family = SupportFamily::build(&adj, full, h, limits)?;
    let mut trace = Vec::new();
    let hit = recurse(g, &family, full, 0, limits, &mut trace)?;
    if let Some(m) = find_model_masks(&adj, full & !hit, h) {
        return Err(Error::Invariant(format!("recursive hitting set misses the model {m:?}")));
    }
    let pack = pack_within(&family, full);
    let size_bound = (2 * pack).saturating_sub(1).saturating_mul(width_budget.saturating_add(1));
    let size = hit.count_ones() as usize;
    let widest = trace.iter().map(|s| s.width).max().unwrap_or(0);
    if widest > width_budget {
        log::warn!("recursion met treewidth {widest} above the budget {width_budget}");
    }
    log::info!(
        "hitting set of size {size} for pack {pack}: {} separations, bound (2k-1)(w+1) = {size_bound}",
        trace.len()
    );
    Ok(HittingSet {
        vertices: VertexSet::from_mask(g.n(), hit),
        pack,
        width_budget,
        size_bound,
        trace,
    })
}

fn recurse(
    g: &Graph,
    family: &SupportFamily,
    within: u64,
    depth: usize,
    limits: &Limits,
    trace: &mut Vec<RecursionStep>,
) -> Result<u64> {
    let k = pack_within(family, within);
    if k == 0 {
        return Ok(0);
    }
    let local: Vec<usize> = mask::bits(within).collect();
    let sub = g.induced(&local);
    let to_global = |m: u64| mask::bits(m).fold(0u64, |acc, i| acc | mask::bit(local[i]));
    let (width, td) = treewidth_exact(&sub, limits)?;
    let ntd = make_nice(&sub, &td)?;
    let result = split(&sub, &ntd, &|m| pack_within(family, to_global(m)))?;
    let sep = &result.separation;
    log::debug!(
        "depth {depth}: {} vertices, pack {k}, width {width}, separator {}",
        local.len(),
        sep.order
    );
    trace.push(RecursionStep {
        depth,
        vertices: local.len(),
        pack: k,
        width,
        separator: sep.order,
    });
    let separator = to_global(sep.a.intersection(&sep.b).to_mask());
    let left = to_global(sep.a_only().to_mask());
    let right = to_global(sep.b_only().to_mask());
    let hit_left = recurse(g, family, left, depth + 1, limits, trace)?;
    let hit_right = recurse(g, family, right, depth + 1, limits, trace)?;
    Ok(separator | hit_left | hit_right)
}
