use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{mask, Graph, VertexSet};
use crate::limits::Limits;
use crate::minors::{find_model_masks, minimal_model_masks, minimize_masks, MinorModel};

/// Supports of the vertex-minimal models of a pattern, with one model per support.
///
/// Supports that strictly contain another support are dropped: any packing or
/// hitting set argument can use the smaller one instead.
#[derive(Debug, Clone)]
pub(crate) struct SupportFamily {
    pub supports: Vec<u64>,
    pub models: Vec<Vec<u64>>,
}

impl SupportFamily {
    pub fn build(adj: &[u64], allowed: u64, pattern: &Graph, limits: &Limits) -> Result<SupportFamily> {
        let (models, truncated) = minimal_model_masks(adj, allowed, pattern, limits.model_enumeration);
        if truncated {
            return Err(Error::size("minimal models", models.len() + 1, limits.model_enumeration));
        }
        let mut by_support: HashMap<u64, Vec<u64>> = HashMap::new();
        for m in models {
            let support = m.iter().fold(0, |a, &s| a | s);
            by_support.entry(support).or_insert(m);
        }
        let mut supports: Vec<u64> = by_support.keys().copied().collect();
        supports.sort_by_key(|s| (s.count_ones(), *s));
        let mut kept: Vec<u64> = Vec::new();
        for s in supports {
            if !kept.iter().any(|&k| k & s == k) {
                kept.push(s);
            }
        }
        kept.sort_unstable();
        let models = kept.iter().map(|s| by_support[s].clone()).collect();
        Ok(SupportFamily { supports: kept, models })
    }

    /// Maximum number of pairwise disjoint supports inside `avail`, with their indices.
    pub fn max_packing(&self, avail: u64) -> (usize, Vec<usize>) {
        let mut memo = HashMap::new();
        let count = self.pack_value(avail, &mut memo);
        let mut chosen = Vec::new();
        let mut avail = self.relevant(avail).1;
        while avail != 0 {
            let target = self.pack_value(avail, &mut memo);
            if target == 0 {
                break;
            }
            let v = mask::lowest(avail).expect("non-empty");
            let skip = self.relevant(avail & !mask::bit(v)).1;
            if self.pack_value(skip, &mut memo) == target {
                avail = skip;
                continue;
            }
            let (i, &s) = self
                .supports
                .iter()
                .enumerate()
                .find(|&(_, &s)| s & mask::bit(v) != 0 && s & !avail == 0 && {
                    let rest = self.relevant(avail & !s).1;
                    1 + self.pack_value(rest, &mut memo) == target
                })
                .expect("some support realises the optimum");
            chosen.push(i);
            avail = self.relevant(avail & !s).1;
        }
        (count, chosen)
    }

    /// Indices of supports inside `avail` and the union of those supports.
    fn relevant(&self, avail: u64) -> (Vec<usize>, u64) {
        let mut idx = Vec::new();
        let mut union = 0;
        for (i, &s) in self.supports.iter().enumerate() {
            if s & !avail == 0 {
                idx.push(i);
                union |= s;
            }
        }
        (idx, union)
    }

    fn pack_value(&self, avail: u64, memo: &mut HashMap<u64, usize>) -> usize {
        let (idx, union) = self.relevant(avail);
        if idx.is_empty() {
            return 0;
        }
        if let Some(&v) = memo.get(&union) {
            return v;
        }
        let v = mask::lowest(union).expect("non-empty");
        let mut best = self.pack_value(union & !mask::bit(v), memo);
        for &i in &idx {
            let s = self.supports[i];
            if s & mask::bit(v) != 0 {
                best = best.max(1 + self.pack_value(union & !s, memo));
            }
        }
        memo.insert(union, best);
        best
    }
}

pub(crate) fn pack_limit(pattern: &Graph, limits: &Limits) -> usize {
    let triangle = pattern.n() == 3 && pattern.m() == 3;
    if triangle {
        limits.pack_host_triangle
    } else {
        limits.pack_host
    }
}

fn check(g: &Graph, h: &Graph, limits: &Limits) -> Result<()> {
    if h.n() == 0 {
        return Err(Error::Parameter("the pattern needs at least one vertex".into()));
    }
    Error::check_size("pattern vertices for minor search", h.n(), limits.minor_pattern)?;
    Error::check_size("host vertices for packing/covering", g.n(), pack_limit(h, limits))?;
    Error::check_size("host vertices for packing/covering", g.n(), 64)
}

/// Maximum number of pairwise vertex-disjoint models of `h` in `g`, with witnesses.
pub fn pack_exact(g: &Graph, h: &Graph, limits: &Limits) -> Result<(usize, Vec<MinorModel>)> {
    check(g, h, limits)?;
    let adj = g.neighbor_masks()?;
    let family = SupportFamily::build(&adj, mask::full(g.n()), h, limits)?;
    let (count, chosen) = family.max_packing(mask::full(g.n()));
    let host = Arc::new(g.clone());
    let pattern = Arc::new(h.clone());
    let models = chosen
        .iter()
        .map(|&i| MinorModel::from_masks(&host, &pattern, &family.models[i]))
        .collect();
    Ok((count, models))
}

/// Packing number of `h` in `G[allowed]` from a precomputed support family of `G`.
pub(crate) fn pack_within(family: &SupportFamily, allowed: u64) -> usize {
    family.max_packing(allowed).0
}

/// Minimum hitting set of `sets`, trying sizes from `start` upwards.
fn min_hitting_set(sets: &[u64], start: usize) -> u64 {
    fn dfs(sets: &[u64], chosen: u64, budget: usize) -> Option<u64> {
        let Some(&open) = sets.iter().find(|&&s| s & chosen == 0) else { return Some(chosen) };
        if budget == 0 {
            return None;
        }
        // disjoint unhit sets each need their own vertex
        let mut blocked = chosen;
        let mut disjoint = 0;
        for &s in sets {
            if s & blocked == 0 {
                disjoint += 1;
                blocked |= s;
            }
        }
        if disjoint > budget {
            return None;
        }
        mask::bits(open).find_map(|v| dfs(sets, chosen | mask::bit(v), budget - 1))
    }
    let mut sorted = sets.to_vec();
    sorted.sort_by_key(|s| (s.count_ones(), *s));
    (start..)
        .find_map(|size| dfs(&sorted, 0, size))
        .expect("the union of all sets hits everything")
}

/// Minimum number of vertices meeting every model of `h` in `g`, with a witness.
///
/// Hitting sets are computed for a growing family of minimal supports; a
/// candidate is accepted once the graph minus the candidate has no model.
/// Otherwise the model found is shrunk to a minimal one and added.
pub fn cover_exact(g: &Graph, h: &Graph, limits: &Limits) -> Result<(usize, VertexSet)> {
    check(g, h, limits)?;
    let adj = g.neighbor_masks()?;
    let full = mask::full(g.n());
    let (seed, _) = minimal_model_masks(&adj, full, h, limits.model_enumeration);
    let mut sets: Vec<u64> = seed.iter().map(|m| m.iter().fold(0, |a, &s| a | s)).collect();
    sets.sort_unstable();
    sets.dedup();
    let mut size = 0;
    loop {
        let x = if sets.is_empty() { 0 } else { min_hitting_set(&sets, size) };
        size = x.count_ones() as usize;
        match find_model_masks(&adj, full & !x, h) {
            None => return Ok((size, VertexSet::from_mask(g.n(), x))),
            Some(m) => {
                let m = minimize_masks(&adj, h, &m);
                sets.push(m.iter().fold(0, |a, &s| a | s));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};
    use crate::minors::verify_model;

    /// Smallest vertex set whose removal leaves no model, by trying all subsets.
    fn brute_cover(g: &Graph, h: &Graph) -> usize {
        let adj = g.neighbor_masks().unwrap();
        let full = mask::full(g.n());
        (0..=g.n())
            .find(|&size| {
                (0..1u64 << g.n())
                    .filter(|x| x.count_ones() as usize == size)
                    .any(|x| find_model_masks(&adj, full & !x, h).is_none())
            })
            .unwrap()
    }

    fn fam(f: Family) -> Graph {
        generate(&f).unwrap()
    }

    #[test]
    fn packing_examples() {
        let l = Limits::default();
        let k3 = fam(Family::Complete { n: 3 });
        assert_eq!(pack_exact(&fam(Family::Complete { n: 6 }), &k3, &l).unwrap().0, 2);
        let three = fam(Family::DisjointCopies {
            k: 3,
            base: Box::new(Family::Complete { n: 3 }),
        });
        let (p, models) = pack_exact(&three, &k3, &l).unwrap();
        assert_eq!(p, 3);
        for (i, a) in models.iter().enumerate() {
            assert!(verify_model(a).is_valid());
            for b in &models[i + 1..] {
                assert!(a.is_disjoint_from(b));
            }
        }
        assert_eq!(pack_exact(&fam(Family::Complete { n: 5 }), &k3, &l).unwrap().0, 1);
        let forest = fam(Family::RandomTernaryTree { n: 10, seed: 2 });
        assert_eq!(pack_exact(&forest, &k3, &l).unwrap().0, 0);
    }

    #[test]
    fn cover_examples() {
        let l = Limits::default();
        let k3 = fam(Family::Complete { n: 3 });
        let k23 = fam(Family::CompleteBipartite { p: 2, q: 3 });
        let k5 = fam(Family::Complete { n: 5 });
        assert_eq!(cover_exact(&k5, &k3, &l).unwrap().0, 3);
        assert_eq!(brute_cover(&k5, &k3), 3);
        assert_eq!(cover_exact(&k23, &k23, &l).unwrap().0, 1);
        assert_eq!(brute_cover(&k23, &k23), 1);
        let forest = fam(Family::Path { n: 6 });
        let (c, x) = cover_exact(&forest, &k3, &l).unwrap();
        assert_eq!((c, x.len()), (0, 0));
    }

    #[test]
    fn random_instances_match_brute_force() {
        let l = Limits::default();
        let patterns = [fam(Family::Complete { n: 3 }), fam(Family::Cycle { n: 4 }), fam(Family::Star { n: 3 })];
        for seed in 0..25 {
            let g = fam(Family::RandomGnp { n: 8, p: 0.35, seed });
            for h in &patterns {
                let (c, x) = cover_exact(&g, h, &l).unwrap();
                assert_eq!(c, brute_cover(&g, h), "seed {seed}");
                let adj = g.neighbor_masks().unwrap();
                assert!(find_model_masks(&adj, mask::full(8) & !x.to_mask(), h).is_none());
                let (p, _) = pack_exact(&g, h, &l).unwrap();
                assert!(p <= c, "seed {seed}");
            }
        }
    }

    #[test]
    fn limits() {
        let l = Limits::default();
        let k3 = fam(Family::Complete { n: 3 });
        let k4 = fam(Family::Complete { n: 4 });
        assert!(pack_exact(&Graph::empty(25), &k3, &l).unwrap_err().is_size_limit());
        assert!(pack_exact(&Graph::empty(19), &k4, &l).unwrap_err().is_size_limit());
        assert!(pack_exact(&Graph::empty(19), &k3, &l).is_ok());
    }
}
