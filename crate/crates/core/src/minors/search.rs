//! Branch-set search.
//!
//! Branch sets grow one vertex at a time and stay connected. Every decision
//! concerns a host vertex `v` and a pattern vertex `a`: either `v` joins the
//! branch set of `a`, or `v` is forbidden for `a` from then on. Vertices only
//! join a non-empty set when adjacent to it, so sets are always connected. For
//! any vertex-minimal model `M` the branch that follows `M` stays inside `M`
//! and succeeds exactly when it reaches `M`, which makes the enumeration of
//! success states complete for minimal models.

use std::collections::HashSet;
use std::sync::Arc;

use super::MinorModel;
use crate::error::{Error, Result};
use crate::graph::{mask, Graph};
use crate::limits::Limits;

/// Minimal models found by [`enumerate_minimal_models`].
#[derive(Debug, Clone)]
pub struct ModelEnumeration {
    pub models: Vec<MinorModel>,
    /// Set when the enumeration stopped at its limit.
    pub truncated: bool,
}

enum Goal {
    First,
    Minimal { limit: usize },
}

struct Engine<'a> {
    adj: &'a [u64],
    allowed: u64,
    pattern_edges: Vec<(usize, usize)>,
    /// Pattern vertices by decreasing degree, used when seeding new components.
    seed_order: Vec<usize>,
    sets: Vec<u64>,
    forbidden: Vec<u64>,
    used: u64,
    goal: Goal,
    found: Vec<Vec<u64>>,
    keys: HashSet<Vec<u64>>,
    truncated: bool,
}

/// What the engine does next.
enum Step {
    Success,
    Dead,
    Decide(usize, usize),
}

impl Engine<'_> {
    fn new<'a>(adj: &'a [u64], allowed: u64, pattern: &Graph, goal: Goal) -> Engine<'a> {
        let p = pattern.n();
        let mut seed_order: Vec<usize> = (0..p).collect();
        seed_order.sort_by_key(|&x| (std::cmp::Reverse(pattern.degree(x)), x));
        Engine {
            adj,
            allowed,
            pattern_edges: pattern.edges().collect(),
            seed_order,
            sets: vec![0; p],
            forbidden: vec![0; p],
            used: 0,
            goal,
            found: Vec::new(),
            keys: HashSet::new(),
            truncated: false,
        }
    }

    #[inline]
    fn free(&self, a: usize) -> u64 {
        self.allowed & !self.used & !self.forbidden[a]
    }

    #[inline]
    fn realised(&self, a: usize, b: usize) -> bool {
        mask::neighbourhood(self.adj, self.sets[a]) & self.sets[b] != 0
    }

    fn step(&self) -> Step {
        let p = self.sets.len();
        let mut empty = 0;
        for a in 0..p {
            if self.sets[a] == 0 {
                if self.free(a) == 0 {
                    return Step::Dead;
                }
                empty += 1;
            }
        }
        if empty > (self.allowed & !self.used).count_ones() as usize {
            return Step::Dead;
        }
        let mut pending: Option<(usize, usize)> = None;
        let mut seed: Option<(usize, usize)> = None;
        for &(x, y) in &self.pattern_edges {
            let (sx, sy) = (self.sets[x], self.sets[y]);
            if sx != 0 && sy != 0 {
                if self.realised(x, y) {
                    continue;
                }
                let room = sx | sy | self.free(x) | self.free(y);
                if mask::reach(self.adj, sx, room) & sy == 0 {
                    return Step::Dead;
                }
                if pending.is_none() {
                    pending = Some((x, y));
                }
            } else if seed.is_none() && (sx != 0 || sy != 0) {
                seed = Some(if sx != 0 { (x, y) } else { (y, x) });
            }
        }
        if let Some((a, b)) = pending {
            return self.grow_towards(a, b);
        }
        if let Some((a, b)) = seed {
            // b is empty; seed it as close to the branch set of a as possible
            return Step::Decide(self.closest(self.sets[a], self.free(b), self.free(b)), b);
        }
        match self.seed_order.iter().find(|&&a| self.sets[a] == 0) {
            Some(&a) => Step::Decide(mask::lowest(self.free(a)).expect("checked non-empty"), a),
            None => Step::Success,
        }
    }

    /// Decision that extends `a` or `b` towards each other.
    fn grow_towards(&self, a: usize, b: usize) -> Step {
        let (sa, sb) = (self.sets[a], self.sets[b]);
        let ca = mask::neighbourhood(self.adj, sa) & self.free(a);
        let cb = mask::neighbourhood(self.adj, sb) & self.free(b);
        if let Some(v) = mask::lowest(ca & mask::neighbourhood(self.adj, sb)) {
            return Step::Decide(v, a);
        }
        if let Some(v) = mask::lowest(cb & mask::neighbourhood(self.adj, sa)) {
            return Step::Decide(v, b);
        }
        let room = self.free(a) | self.free(b);
        if ca != 0 {
            Step::Decide(self.closest(sb, ca, room), a)
        } else if cb != 0 {
            Step::Decide(self.closest(sa, cb, room), b)
        } else {
            Step::Dead
        }
    }

    /// Vertex of `targets` nearest to `from` through `room` (lowest id on ties).
    fn closest(&self, from: u64, targets: u64, room: u64) -> usize {
        let mut seen = from;
        let mut frontier = from;
        loop {
            let next = mask::neighbourhood(self.adj, frontier) & (room | targets) & !seen;
            if let Some(v) = mask::lowest(next & targets) {
                return v;
            }
            if next == 0 {
                return mask::lowest(targets).expect("targets is non-empty");
            }
            seen |= next;
            frontier = next;
        }
    }

    /// Returns true when the search should stop.
    fn run(&mut self) -> bool {
        match self.step() {
            Step::Dead => false,
            Step::Success => self.record(),
            Step::Decide(v, a) => {
                let bit = mask::bit(v);
                self.sets[a] |= bit;
                self.used |= bit;
                let stop = self.run();
                self.sets[a] &= !bit;
                self.used &= !bit;
                if stop {
                    return true;
                }
                self.forbidden[a] |= bit;
                let stop = self.run();
                self.forbidden[a] &= !bit;
                stop
            }
        }
    }

    fn record(&mut self) -> bool {
        match self.goal {
            Goal::First => {
                self.found.push(self.sets.clone());
                true
            }
            Goal::Minimal { limit } => {
                if !is_vertex_minimal(self.adj, &self.pattern_edges, &self.sets) {
                    return false;
                }
                let mut key = self.sets.clone();
                key.sort_unstable();
                if self.keys.insert(key) {
                    if self.found.len() == limit {
                        self.truncated = true;
                        return true;
                    }
                    self.found.push(self.sets.clone());
                }
                false
            }
        }
    }
}

fn removable(adj: &[u64], edges: &[(usize, usize)], sets: &[u64], a: usize, v: usize) -> bool {
    let rest = sets[a] & !mask::bit(v);
    if rest == 0 || !mask::is_connected(adj, rest) {
        return false;
    }
    let reach = mask::neighbourhood(adj, rest);
    edges.iter().all(|&(x, y)| {
        if x == a {
            reach & sets[y] != 0
        } else if y == a {
            reach & sets[x] != 0
        } else {
            true
        }
    })
}

fn is_vertex_minimal(adj: &[u64], edges: &[(usize, usize)], sets: &[u64]) -> bool {
    (0..sets.len()).all(|a| mask::bits(sets[a]).all(|v| !removable(adj, edges, sets, a, v)))
}

/// Removes vertices from the branch sets until the model is vertex-minimal.
pub fn minimize_masks(adj: &[u64], pattern: &Graph, sets: &[u64]) -> Vec<u64> {
    let edges: Vec<(usize, usize)> = pattern.edges().collect();
    let mut sets = sets.to_vec();
    loop {
        let hit = (0..sets.len()).find_map(|a| {
            mask::bits(sets[a])
                .find(|&v| removable(adj, &edges, &sets, a, v))
                .map(|v| (a, v))
        });
        match hit {
            Some((a, v)) => sets[a] &= !mask::bit(v),
            None => return sets,
        }
    }
}

fn quick_reject(adj: &[u64], allowed: u64, pattern: &Graph) -> bool {
    let n = allowed.count_ones() as usize;
    let m: usize = mask::bits(allowed).map(|v| (adj[v] & allowed).count_ones() as usize).sum::<usize>() / 2;
    pattern.n() > n || pattern.m() > m
}

/// A model of `pattern` inside the host restricted to `allowed`, as branch masks.
pub fn find_model_masks(adj: &[u64], allowed: u64, pattern: &Graph) -> Option<Vec<u64>> {
    if quick_reject(adj, allowed, pattern) {
        return None;
    }
    let mut engine = Engine::new(adj, allowed, pattern, Goal::First);
    engine.run();
    engine.found.pop()
}

/// Vertex-minimal models inside `allowed`, deduplicated by their family of
/// branch sets; the flag reports truncation at `limit`.
pub fn minimal_model_masks(adj: &[u64], allowed: u64, pattern: &Graph, limit: usize) -> (Vec<Vec<u64>>, bool) {
    if quick_reject(adj, allowed, pattern) {
        return (Vec::new(), false);
    }
    let mut engine = Engine::new(adj, allowed, pattern, Goal::Minimal { limit });
    engine.run();
    (engine.found, engine.truncated)
}

fn check_sizes(host: &Graph, pattern: &Graph, limits: &Limits) -> Result<()> {
    Error::check_size("pattern vertices for minor search", pattern.n(), limits.minor_pattern)?;
    Error::check_size("host vertices for minor search", host.n(), limits.minor_host)?;
    Error::check_size("host vertices for minor search", host.n(), 64)
}

/// A model of `pattern` in `host`, or `None` when `pattern` is not a minor of `host`.
pub fn find_minor_model(host: &Graph, pattern: &Graph, limits: &Limits) -> Result<Option<MinorModel>> {
    check_sizes(host, pattern, limits)?;
    let adj = host.neighbor_masks()?;
    let host = Arc::new(host.clone());
    let pattern = Arc::new(pattern.clone());
    Ok(find_model_masks(&adj, mask::full(host.n()), &pattern).map(|m| MinorModel::from_masks(&host, &pattern, &m)))
}

/// Every vertex-minimal model (up to `limit`), one per family of branch sets.
pub fn enumerate_minimal_models(
    host: &Graph,
    pattern: &Graph,
    limit: usize,
    limits: &Limits,
) -> Result<ModelEnumeration> {
    check_sizes(host, pattern, limits)?;
    let adj = host.neighbor_masks()?;
    let host = Arc::new(host.clone());
    let pattern = Arc::new(pattern.clone());
    let (found, truncated) = minimal_model_masks(&adj, mask::full(host.n()), &pattern, limit);
    Ok(ModelEnumeration {
        models: found.iter().map(|m| MinorModel::from_masks(&host, &pattern, m)).collect(),
        truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};
    use crate::graph::mask;
    use crate::minors::verify_model;

    fn masks_form_model(adj: &[u64], pattern: &Graph, sets: &[u64]) -> bool {
        let mut used = 0u64;
        for &s in sets {
            if s == 0 || s & used != 0 || !mask::is_connected(adj, s) {
                return false;
            }
            used |= s;
        }
        pattern.edges().all(|(x, y)| mask::neighbourhood(adj, sets[x]) & sets[y] != 0)
    }

    /// Every assignment of host vertices to a pattern vertex or to nothing.
    fn brute_force_models(host: &Graph, pattern: &Graph) -> Vec<Vec<u64>> {
        let adj = host.neighbor_masks().unwrap();
        let (n, p) = (host.n(), pattern.n());
        let total = (p + 1).pow(n as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut sets = vec![0u64; p];
            let mut c = code;
            for v in 0..n {
                let slot = c % (p + 1);
                c /= p + 1;
                if slot < p {
                    sets[slot] |= mask::bit(v);
                }
            }
            if masks_form_model(&adj, pattern, &sets) {
                out.push(sets);
            }
        }
        out
    }

    fn small_patterns() -> Vec<Graph> {
        vec![
            generate(&Family::Complete { n: 3 }).unwrap(),
            generate(&Family::CompleteBipartite { p: 1, q: 3 }).unwrap(),
            generate(&Family::Cycle { n: 4 }).unwrap(),
            generate(&Family::Complete { n: 4 }).unwrap(),
            generate(&Family::Path { n: 4 }).unwrap(),
            Graph::new(4, [(0, 1), (2, 3)]).unwrap(),
            Graph::new(3, [(0, 1)]).unwrap(),
        ]
    }

    #[test]
    fn find_agrees_with_brute_force() {
        let limits = Limits::default();
        for seed in 0..25 {
            let n = 4 + (seed as usize % 4);
            let host = generate(&Family::RandomGnp { n, p: 0.4, seed }).unwrap();
            for pattern in small_patterns() {
                let expected = !brute_force_models(&host, &pattern).is_empty();
                let found = find_minor_model(&host, &pattern, &limits).unwrap();
                assert_eq!(found.is_some(), expected, "seed {seed}, pattern {pattern:?}");
                if let Some(m) = found {
                    assert!(verify_model(&m).is_valid());
                }
            }
        }
    }

    #[test]
    fn enumeration_agrees_with_brute_force() {
        let limits = Limits::default();
        for seed in 0..20 {
            let n = 4 + (seed as usize % 3);
            let host = generate(&Family::RandomGnp { n, p: 0.5, seed: 100 + seed }).unwrap();
            let adj = host.neighbor_masks().unwrap();
            for pattern in small_patterns() {
                let edges: Vec<_> = pattern.edges().collect();
                let mut expected: Vec<Vec<u64>> = brute_force_models(&host, &pattern)
                    .into_iter()
                    .filter(|s| is_vertex_minimal(&adj, &edges, s))
                    .map(|mut s| {
                        s.sort_unstable();
                        s
                    })
                    .collect();
                expected.sort();
                expected.dedup();
                let result = enumerate_minimal_models(&host, &pattern, 100_000, &limits).unwrap();
                assert!(!result.truncated);
                let mut got: Vec<Vec<u64>> = result
                    .models
                    .iter()
                    .map(|m| {
                        assert!(verify_model(m).is_valid());
                        let mut s: Vec<u64> = m.branch_sets.iter().map(|b| b.to_mask()).collect();
                        s.sort_unstable();
                        s
                    })
                    .collect();
                got.sort();
                assert_eq!(got, expected, "seed {seed}, pattern {pattern:?}");
            }
        }
    }

    #[test]
    fn examples() {
        let limits = Limits::default();
        let k3 = generate(&Family::Complete { n: 3 }).unwrap();
        let k23 = generate(&Family::CompleteBipartite { p: 2, q: 3 }).unwrap();
        let c6 = generate(&Family::Cycle { n: 6 }).unwrap();
        assert!(find_minor_model(&c6, &k23, &limits).unwrap().is_none());
        let c5 = generate(&Family::Cycle { n: 5 }).unwrap();
        assert!(find_minor_model(&c5, &k3, &limits).unwrap().is_some());
        let grid = generate(&Family::Grid { rows: 3, cols: 3 }).unwrap();
        let xi3 = generate(&Family::Xi { r: 3 }).unwrap();
        let m = find_minor_model(&grid, &xi3, &limits).unwrap().unwrap();
        assert!(verify_model(&m).is_valid());

        let k4 = generate(&Family::Complete { n: 4 }).unwrap();
        let e = enumerate_minimal_models(&k4, &k3, 100, &limits).unwrap();
        assert_eq!(e.models.len(), 4);
        assert!(e.models.iter().all(|m| m.branch_sets.iter().all(|s| s.len() == 1)));
        // A K3 minor is any cycle, so only forests are free of it.
        let c4 = generate(&Family::Cycle { n: 4 }).unwrap();
        assert_eq!(enumerate_minimal_models(&c4, &k3, 100, &limits).unwrap().models.len(), 4);
        let tree = generate(&Family::RandomTernaryTree { n: 12, seed: 5 }).unwrap();
        assert!(enumerate_minimal_models(&tree, &k3, 100, &limits).unwrap().models.is_empty());
        let e = enumerate_minimal_models(&k23, &k23, 100, &limits).unwrap();
        assert_eq!(e.models.len(), 1);
        let e = enumerate_minimal_models(&k4, &k3, 2, &limits).unwrap();
        assert!(e.truncated && e.models.len() == 2);
    }

    #[test]
    fn size_limits() {
        let limits = Limits::default();
        let big = Graph::empty(25);
        let k3 = generate(&Family::Complete { n: 3 }).unwrap();
        assert!(find_minor_model(&big, &k3, &limits).unwrap_err().is_size_limit());
        let k11 = generate(&Family::Complete { n: 11 }).unwrap();
        assert!(find_minor_model(&k11, &k11, &limits).unwrap_err().is_size_limit());
    }

    #[test]
    fn minimize_keeps_a_model() {
        let host = generate(&Family::Grid { rows: 3, cols: 4 }).unwrap();
        let adj = host.neighbor_masks().unwrap();
        let k3 = generate(&Family::Cycle { n: 3 }).unwrap();
        let fat = [0b0000_0011_0011, 0b0000_1100_1100, 0b1111_0000_0000];
        assert!(masks_form_model(&adj, &k3, &fat));
        let slim = minimize_masks(&adj, &k3, &fat);
        assert!(masks_form_model(&adj, &k3, &slim));
        let edges: Vec<_> = k3.edges().collect();
        assert!(is_vertex_minimal(&adj, &edges, &slim));
    }
}
