use std::collections::HashMap;

use super::decomposition::{decomposition_from_elimination, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{contraction_degeneracy, mask, ContractionMode, Graph};
use crate::limits::Limits;

/// Greedy minimum fill-in elimination order with the width it attains.
pub fn min_fill_order(g: &Graph) -> Result<(usize, Vec<usize>)> {
    let mut adj = g.neighbor_masks()?;
    let mut alive = mask::full(g.n());
    let mut order = Vec::with_capacity(g.n());
    let mut width = 0;
    while alive != 0 {
        let v = mask::bits(alive)
            .min_by_key(|&v| (fill_in(&adj, adj[v] & alive), (adj[v] & alive).count_ones(), v))
            .expect("alive is non-empty");
        let nb = adj[v] & alive;
        width = width.max(nb.count_ones() as usize);
        for w in mask::bits(nb) {
            adj[w] |= nb & !mask::bit(w);
        }
        alive &= !mask::bit(v);
        order.push(v);
    }
    Ok((width, order))
}

fn fill_in(adj: &[u64], nb: u64) -> u32 {
    mask::bits(nb).map(|w| (nb & !adj[w] & !mask::bit(w)).count_ones()).sum::<u32>() / 2
}

/// Minor-based lower bound on treewidth (greedy contraction degeneracy, per component).
pub fn treewidth_lower_bound(g: &Graph) -> Result<usize> {
    let mut best = 0;
    for comp in g.components() {
        let h = g.induced(&comp);
        best = best.max(contraction_degeneracy(&h, ContractionMode::LowerBound, &Limits::default())?);
    }
    Ok(best)
}

/// Exact treewidth with a certifying decomposition.
///
/// Each component is solved by a dynamic programme over sets of eliminated
/// vertices, keeping only states that beat the min-fill upper bound.
pub fn treewidth_exact(g: &Graph, limits: &Limits) -> Result<(usize, TreeDecomposition)> {
    Error::check_size("vertices for exact treewidth", g.n(), limits.treewidth)?;
    let mut order = Vec::with_capacity(g.n());
    let mut width = 0;
    for comp in g.components() {
        let h = g.induced(&comp);
        let (w, local) = component_treewidth(&h)?;
        width = width.max(w);
        order.extend(local.into_iter().map(|v| comp[v]));
    }
    let td = decomposition_from_elimination(g, &order);
    if td.width != width {
        return Err(Error::Invariant(format!(
            "elimination order realises width {} instead of {width}",
            td.width
        )));
    }
    Ok((width, td))
}

fn component_treewidth(h: &Graph) -> Result<(usize, Vec<usize>)> {
    let n = h.n();
    if n <= 1 {
        return Ok((0, (0..n).collect()));
    }
    let (ub, ub_order) = min_fill_order(h)?;
    let lb = contraction_degeneracy(h, ContractionMode::LowerBound, &Limits::default())?;
    if lb >= ub {
        return Ok((ub, ub_order));
    }
    let adj = h.neighbor_masks()?;
    let full = mask::full(n);
    // value and last-eliminated vertex of every reachable state
    let mut best: HashMap<u64, (u8, u8)> = HashMap::new();
    best.insert(0, (0, u8::MAX));
    let mut layer: Vec<u64> = vec![0];
    for _ in 0..n {
        let mut next: HashMap<u64, (u8, u8)> = HashMap::new();
        for &s in &layer {
            let t = best[&s].0 as usize;
            for v in mask::bits(full & !s) {
                let within = s | mask::bit(v);
                let region = mask::reach(&adj, mask::bit(v), within);
                let q = (mask::neighbourhood(&adj, region) & !within).count_ones() as usize;
                let value = t.max(q);
                if value >= ub {
                    continue;
                }
                let key = s | mask::bit(v);
                let entry = next.entry(key).or_insert((u8::MAX, u8::MAX));
                if (value as u8) < entry.0 {
                    *entry = (value as u8, v as u8);
                }
            }
        }
        layer = next.keys().copied().collect();
        layer.sort_unstable();
        best.extend(next);
        if layer.is_empty() {
            return Ok((ub, ub_order));
        }
    }
    let (value, _) = best[&full];
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let last = best[&s].1 as usize;
        order.push(last);
        s &= !mask::bit(last);
    }
    order.reverse();
    Ok((value as usize, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};
    use crate::width::verify_decomposition;

    fn tw(family: Family) -> usize {
        let g = generate(&family).unwrap();
        let (w, td) = treewidth_exact(&g, &Limits::default()).unwrap();
        assert!(verify_decomposition(&g, &td).is_valid());
        w
    }

    /// Minimum over all elimination orders, by brute force over permutations.
    fn brute_force(g: &Graph) -> usize {
        fn rec(adj: Vec<u64>, alive: u64, cur: usize, best: &mut usize) {
            if alive == 0 {
                *best = (*best).min(cur);
                return;
            }
            for v in mask::bits(alive) {
                let nb = adj[v] & alive;
                let w = cur.max(nb.count_ones() as usize);
                if w >= *best {
                    continue;
                }
                let mut next = adj.clone();
                for x in mask::bits(nb) {
                    next[x] |= nb & !mask::bit(x);
                }
                rec(next, alive & !mask::bit(v), w, best);
            }
        }
        let mut best = usize::MAX;
        rec(g.neighbor_masks().unwrap(), mask::full(g.n()), 0, &mut best);
        if g.n() == 0 {
            0
        } else {
            best
        }
    }

    #[test]
    fn examples() {
        assert_eq!(tw(Family::Complete { n: 6 }), 5);
        assert_eq!(tw(Family::Cycle { n: 5 }), 2);
        assert_eq!(tw(Family::Xi { r: 5 }), 2);
        assert_eq!(tw(Family::Grid { rows: 4, cols: 4 }), 4);
        assert_eq!(tw(Family::Path { n: 1 }), 0);
        assert_eq!(tw(Family::RandomTernaryTree { n: 15, seed: 1 }), 1);
    }

    #[test]
    fn agrees_with_permutation_brute_force() {
        for seed in 0..60 {
            let n = 3 + (seed as usize % 6);
            let g = generate(&Family::RandomGnp { n, p: 0.45, seed }).unwrap();
            let (w, _) = treewidth_exact(&g, &Limits::default()).unwrap();
            assert_eq!(w, brute_force(&g), "seed {seed}");
        }
    }

    #[test]
    fn size_limit() {
        let g = Graph::empty(21);
        assert!(treewidth_exact(&g, &Limits::default()).unwrap_err().is_size_limit());
    }
}
