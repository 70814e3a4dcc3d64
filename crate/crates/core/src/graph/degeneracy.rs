use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::{mask, Graph, VertexSet};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Degeneracy value with its certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegeneracyWitness {
    pub value: usize,
    /// Every vertex has at most `value` neighbours later in this order.
    pub elimination_order: Vec<usize>,
    /// Vertices of a subgraph whose minimum degree equals `value`.
    pub core: Vec<usize>,
}

impl DegeneracyWitness {
    pub fn validate(&self, g: &Graph) -> bool {
        let n = g.n();
        if self.elimination_order.len() != n {
            return false;
        }
        let mut position = vec![usize::MAX; n];
        for (i, &v) in self.elimination_order.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return false;
            }
            position[v] = i;
        }
        let later_ok = (0..n).all(|v| {
            g.neighbors(v).iter().filter(|&&w| position[w] > position[v]).count() <= self.value
        });
        let core = g.induced(&self.core);
        let core_ok = if self.core.is_empty() {
            self.value == 0
        } else {
            core.min_degree() == self.value
        };
        later_ok && core_ok
    }
}

/// Degeneracy by repeated removal of a minimum-degree vertex (lowest id on ties).
pub fn degeneracy(g: &Graph) -> DegeneracyWitness {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (deg[v], v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut removal_degrees = Vec::with_capacity(n);
    while let Some((d, v)) = queue.pop_first() {
        removal_degrees.push(d);
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                queue.remove(&(deg[w], w));
                deg[w] -= 1;
                queue.insert((deg[w], w));
            }
        }
    }
    let value = removal_degrees.iter().copied().max().unwrap_or(0);
    let core_start = removal_degrees.iter().position(|&d| d == value).unwrap_or(0);
    let mut core: Vec<usize> = order[core_start..].to_vec();
    core.sort_unstable();
    DegeneracyWitness {
        value,
        elimination_order: order,
        core,
    }
}

/// How [`contraction_degeneracy`] should work.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContractionMode {
    /// Exhaustive search over deletion/contraction sequences.
    Exact,
    /// Greedy contraction heuristics; never exceeds the exact value.
    LowerBound,
}

/// A minor of some host together with the branch sets realising it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorWitness {
    pub graph: Graph,
    /// `branch_sets[i]` is the set of host vertices contracted into vertex `i`.
    pub branch_sets: Vec<VertexSet>,
}

pub fn contraction_degeneracy(g: &Graph, mode: ContractionMode, limits: &Limits) -> Result<usize> {
    Ok(contraction_degeneracy_witness(g, mode, limits)?.0)
}

/// Contraction degeneracy together with a minor attaining the value.
pub fn contraction_degeneracy_witness(
    g: &Graph,
    mode: ContractionMode,
    limits: &Limits,
) -> Result<(usize, MinorWitness)> {
    let start = State::from_graph(g)?;
    let dgn = degeneracy(g);
    let core_state = start.restrict(&dgn.core);
    let mut best = (core_state.min_degree(), core_state);
    match mode {
        ContractionMode::Exact => {
            Error::check_size("vertices for exact contraction degeneracy", g.n(), limits.contraction_degeneracy)?;
            let greedy = greedy_contractions(&start);
            if greedy.0 > best.0 {
                best = greedy;
            }
            let mut search = ExactSearch {
                best: best.0,
                witness: best.1,
                seen: HashSet::new(),
            };
            search.run(start);
            best = (search.best, search.witness);
        }
        ContractionMode::LowerBound => {
            let greedy = greedy_contractions(&start);
            if greedy.0 > best.0 {
                best = greedy;
            }
        }
    }
    Ok((best.0, best.1.into_witness(g.n())))
}

/// Quotient graph: adjacency masks over state indices plus host branch sets.
#[derive(Clone, Debug)]
struct State {
    adj: Vec<u64>,
    branch: Vec<u64>,
}

impl State {
    fn from_graph(g: &Graph) -> Result<State> {
        let adj = g.neighbor_masks()?;
        let branch = (0..g.n()).map(mask::bit).collect();
        Ok(State { adj, branch })
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    fn min_degree(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).min().unwrap_or(0)
    }

    fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    fn restrict(&self, keep: &[usize]) -> State {
        let mut s = self.clone();
        let drop: Vec<usize> = (0..self.len()).filter(|v| !keep.contains(v)).collect();
        for &v in drop.iter().rev() {
            s = s.delete(v);
        }
        s
    }

    fn delete(&self, v: usize) -> State {
        let adj = (0..self.len())
            .filter(|&u| u != v)
            .map(|u| squeeze(self.adj[u], v))
            .collect();
        let branch = (0..self.len()).filter(|&u| u != v).map(|u| self.branch[u]).collect();
        State { adj, branch }
    }

    /// Merge `v` into `w` and delete `v`.
    fn contract(&self, v: usize, w: usize) -> State {
        let mut merged = self.clone();
        let union = (self.adj[v] | self.adj[w]) & !mask::bit(v) & !mask::bit(w);
        merged.adj[w] = union;
        for u in mask::bits(self.adj[v]) {
            if u != w {
                merged.adj[u] |= mask::bit(w);
            }
        }
        merged.branch[w] |= self.branch[v];
        merged.delete(v)
    }

    fn key(&self) -> Vec<u64> {
        self.adj.clone()
    }

    fn into_witness(self, n: usize) -> MinorWitness {
        let k = self.len();
        let edges = (0..k).flat_map(|u| mask::bits(self.adj[u]).filter(move |&v| v > u).map(move |v| (u, v)));
        let graph = Graph::new(k, edges).expect("state adjacency is symmetric");
        MinorWitness {
            graph,
            branch_sets: self.branch.iter().map(|&b| VertexSet::from_mask(n, b)).collect(),
        }
    }
}

fn squeeze(m: u64, v: usize) -> u64 {
    let low = m & mask::full(v);
    let high = (m >> (v + 1)) << v;
    low | high
}

fn greedy_contractions(start: &State) -> (usize, State) {
    let mut state = start.clone();
    let mut best = (state.min_degree(), state.clone());
    while state.len() > 1 {
        let (v, dv) = (0..state.len())
            .map(|v| (v, state.adj[v].count_ones()))
            .min_by_key(|&(v, d)| (d, v))
            .expect("state is non-empty");
        state = if dv == 0 {
            state.delete(v)
        } else {
            let w = mask::bits(state.adj[v])
                .min_by_key(|&w| ((state.adj[v] & state.adj[w]).count_ones(), w))
                .expect("v has a neighbour");
            state.contract(v, w)
        };
        let d = state.min_degree();
        if d > best.0 {
            best = (d, state.clone());
        }
    }
    best
}

struct ExactSearch {
    best: usize,
    witness: State,
    seen: HashSet<Vec<u64>>,
}

impl ExactSearch {
    fn run(&mut self, state: State) {
        let k = state.len();
        if k == 0 || k - 1 <= self.best {
            return;
        }
        // δ(δ + 1) ≤ 2|E| for every minor with minimum degree δ.
        let m = state.edge_count();
        if (self.best + 1) * (self.best + 2) > 2 * m {
            return;
        }
        if !self.seen.insert(state.key()) {
            return;
        }
        let delta = state.min_degree();
        if delta > self.best {
            self.best = delta;
            self.witness = state.clone();
        }
        let v = (0..k)
            .min_by_key(|&v| (state.adj[v].count_ones(), v))
            .expect("state is non-empty");
        for w in mask::bits(state.adj[v]) {
            self.run(state.contract(v, w));
        }
        self.run(state.delete(v));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn exact(g: &Graph) -> usize {
        contraction_degeneracy(g, ContractionMode::Exact, &Limits::default()).unwrap()
    }

    #[test]
    fn degeneracy_examples() {
        let tree = generate(&Family::RandomTernaryTree { n: 17, seed: 3 }).unwrap();
        assert_eq!(degeneracy(&tree).value, 1);
        assert_eq!(degeneracy(&generate(&Family::Complete { n: 6 }).unwrap()).value, 5);
        assert_eq!(degeneracy(&generate(&Family::Cycle { n: 7 }).unwrap()).value, 2);
        assert_eq!(degeneracy(&Graph::empty(0)).value, 0);
        assert_eq!(degeneracy(&Graph::empty(3)).value, 0);
    }

    #[test]
    fn degeneracy_witness_validates() {
        for seed in 0..40 {
            let g = generate(&Family::RandomGnp { n: 25, p: 0.2, seed }).unwrap();
            let w = degeneracy(&g);
            assert!(w.validate(&g), "seed {seed}: {w:?}");
        }
    }

    #[test]
    fn contraction_degeneracy_examples() {
        let tree = generate(&Family::Path { n: 7 }).unwrap();
        assert_eq!(exact(&tree), 1);
        assert_eq!(exact(&generate(&Family::Complete { n: 5 }).unwrap()), 4);
        assert_eq!(exact(&generate(&Family::Cycle { n: 6 }).unwrap()), 2);
        // The 3x3 grid contracts to K4.
        assert_eq!(exact(&generate(&Family::Grid { rows: 3, cols: 3 }).unwrap()), 3);
    }

    #[test]
    fn exact_limit_is_enforced() {
        let g = generate(&Family::Path { n: 13 }).unwrap();
        assert!(matches!(
            contraction_degeneracy(&g, ContractionMode::Exact, &Limits::default()),
            Err(Error::SizeLimit { .. })
        ));
        assert_eq!(contraction_degeneracy(&g, ContractionMode::LowerBound, &Limits::default()), Ok(1));
    }

    #[test]
    fn witness_is_a_minor_with_the_claimed_min_degree() {
        for seed in 0..30 {
            let g = generate(&Family::RandomGnp { n: 10, p: 0.4, seed }).unwrap();
            let (value, w) = contraction_degeneracy_witness(&g, ContractionMode::Exact, &Limits::default()).unwrap();
            assert_eq!(w.graph.min_degree(), value);
            let adj = g.neighbor_masks().unwrap();
            for (i, set) in w.branch_sets.iter().enumerate() {
                assert!(mask::is_connected(&adj, set.to_mask()));
                for &j in w.graph.neighbors(i) {
                    let touching = mask::neighbourhood(&adj, set.to_mask()) & w.branch_sets[j].to_mask();
                    assert_ne!(touching, 0);
                }
            }
            let lb = contraction_degeneracy(&g, ContractionMode::LowerBound, &Limits::default()).unwrap();
            assert!(lb <= value && degeneracy(&g).value <= value);
        }
    }
}
