//! Seeded instances that satisfy the preconditions of the extraction steps by construction.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::linkage::{LinkageWitness, LinkedPair, PairedLinkage, TerminalTree};
use crate::epd::bounds::linkage_mesh_order;
use crate::error::{Error, Result};
use crate::graph::{generate, Edge, Family, Graph, MultiGraph, VertexSet};
use crate::width::MeshWitness;

/// Builds a graph under a random relabelling; returns it with the map old → new.
fn relabel(n: usize, edges: &[Edge], rng: &mut ChaCha8Rng) -> Result<(Graph, Vec<usize>)> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let g = Graph::new(n, edges.iter().map(|&(u, v)| (perm[u], perm[v])))?;
    Ok((g, perm))
}

fn map_set(set: &VertexSet, perm: &[usize]) -> VertexSet {
    VertexSet::from_iter_with_capacity(perm.len(), set.iter().map(|v| perm[v]))
}

fn map_tree(t: &TerminalTree, perm: &[usize]) -> TerminalTree {
    TerminalTree {
        terminals: t.terminals.iter().map(|&v| perm[v]).collect(),
        tree_vertices: t.tree_vertices.iter().map(|&v| perm[v]).collect(),
        tree_edges: t.tree_edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect(),
    }
}

/// Bipartite multigraph with sides of size `4k²r`, every multidegree `2kr²` and degeneracy below `2kr`.
///
/// The underlying graph is a circulant `d`-regular bipartite graph with
/// `d < 2kr`; the multiplicities of its `d` perfect matchings form a random
/// composition of `2kr²`.
pub fn planted_bipartite_multigraph(k: usize, r: usize, seed: u64) -> Result<(MultiGraph, VertexSet)> {
    if k == 0 || r == 0 {
        return Err(Error::Parameter("k and r must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = 4 * k * k * r;
    let total = 2 * k * r * r;
    let d = rng.gen_range(1..=(2 * k * r - 1).min(side));
    let mut offsets: Vec<usize> = (0..side).collect();
    offsets.shuffle(&mut rng);
    offsets.truncate(d);
    let mut cuts: Vec<usize> = (1..total).collect();
    cuts.shuffle(&mut rng);
    cuts.truncate(d - 1);
    cuts.sort_unstable();
    cuts.insert(0, 0);
    cuts.push(total);
    let mut perm: Vec<usize> = (0..2 * side).collect();
    perm.shuffle(&mut rng);
    let mut b = MultiGraph::new(2 * side);
    for (j, &o) in offsets.iter().enumerate() {
        let mult = cuts[j + 1] - cuts[j];
        for i in 0..side {
            b.add_edge(perm[i], perm[side + (i + o) % side], mult)?;
        }
    }
    let left = VertexSet::from_iter_with_capacity(2 * side, (0..side).map(|i| perm[i]));
    Ok((b, left))
}

/// A graph with a `pq`-mesh of order `(2p−1)(2q+1)`.
///
/// `A` is a random ternary tree on twice the order; the boundary takes
/// tree vertices of degree at most 2, one of them a leaf. Each boundary
/// vertex gets a private neighbour and the private neighbours form a clique,
/// which makes the boundary externally linked in `B`.
pub fn planted_mesh(p: usize, q: usize, seed: u64) -> Result<(Graph, MeshWitness)> {
    if p == 0 || q == 0 {
        return Err(Error::Parameter("p and q must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = linkage_mesh_order(p as u64, q as u64) as usize;
    let t = 2 * s;
    let tree = generate(&Family::RandomTernaryTree { n: t, seed: rng.gen() })?;
    let mut low: Vec<usize> = (0..t).filter(|&v| tree.degree(v) <= 2).collect();
    low.shuffle(&mut rng);
    let leaf = *low.iter().find(|&&v| tree.degree(v) <= 1).expect("trees have leaves");
    low.retain(|&v| v != leaf);
    low.truncate(s - 1);
    low.push(leaf);
    let mut edges: Vec<Edge> = tree.edges().collect();
    for (i, &x) in low.iter().enumerate() {
        edges.push((x, t + i));
        edges.extend((0..i).map(|j| (t + j, t + i)));
    }
    let n = t + s;
    let (g, perm) = relabel(n, &edges, &mut rng)?;
    let a = VertexSet::from_iter_with_capacity(n, (0..t).map(|v| perm[v]));
    let b = VertexSet::from_iter_with_capacity(n, low.iter().copied().chain(t..n).map(|v| perm[v]));
    let w = MeshWitness {
        a,
        b,
        tree_vertices: (0..t).map(|v| perm[v]).collect(),
        tree_edges: tree.edges().map(|(u, v)| (perm[u], perm[v])).collect(),
        order: s,
        connectivity: p * q,
    };
    Ok((g, w))
}

/// Random tree on `terminals` plus `extra` fresh vertices starting at `*next`.
fn random_tree(terminals: Vec<usize>, extra: usize, next: &mut usize, rng: &mut ChaCha8Rng) -> TerminalTree {
    let mut vertices = terminals.clone();
    vertices.extend(*next..*next + extra);
    *next += extra;
    vertices.shuffle(rng);
    let tree_edges = (1..vertices.len()).map(|i| (vertices[rng.gen_range(0..i)], vertices[i])).collect();
    TerminalTree {
        terminals,
        tree_vertices: vertices,
        tree_edges,
    }
}

/// A path through `ends` with 1 or 2 fresh interior vertices.
fn fresh_path(from: usize, to: usize, next: &mut usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let inner = rng.gen_range(1..=2);
    let mut path = vec![from];
    path.extend(*next..*next + inner);
    *next += inner;
    path.push(to);
    path
}

fn graph_of(
    n: usize,
    trees: &[&TerminalTree],
    paths: &[&Vec<usize>],
    noise: &[Edge],
) -> Vec<Edge> {
    let mut edges: Vec<Edge> = trees.iter().flat_map(|t| t.tree_edges.iter().copied()).collect();
    edges.extend(paths.iter().flat_map(|p| p.windows(2).map(|w| (w[0], w[1]))));
    edges.extend(noise.iter().copied().filter(|&(u, v)| u != v && u < n && v < n));
    edges
}

/// `8p²q` terminal sets of size `q` and `4p²q²` paths between the two halves.
///
/// At least `p` sets of the first half send all their paths to a single
/// set of the second half; the remaining terminals are matched at random.
pub fn planted_linkage(p: usize, q: usize, seed: u64) -> Result<(Graph, LinkageWitness)> {
    if p == 0 || q == 0 {
        return Err(Error::Parameter("p and q must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sets = 8 * p * p * q;
    let half = sets / 2;
    let mut next = sets * q;
    let trees: Vec<TerminalTree> = (0..sets)
        .map(|i| {
            let extra = rng.gen_range(0..=2);
            random_tree((i * q..(i + 1) * q).collect(), extra, &mut next, &mut rng)
        })
        .collect();
    let full = rng.gen_range(p..=half);
    let mut right: Vec<usize> = (half..sets).collect();
    right.shuffle(&mut rng);
    let mut paths = Vec::with_capacity(half * q);
    let mut loose_left = Vec::new();
    let mut loose_right = Vec::new();
    for (i, &j) in right.iter().enumerate() {
        if i < full {
            for t in 0..q {
                paths.push((i * q + t, j * q + t));
            }
        } else {
            loose_left.extend(i * q..(i + 1) * q);
            loose_right.extend(j * q..(j + 1) * q);
        }
    }
    loose_right.shuffle(&mut rng);
    paths.extend(loose_left.into_iter().zip(loose_right));
    let paths: Vec<Vec<usize>> = paths.into_iter().map(|(a, b)| fresh_path(a, b, &mut next, &mut rng)).collect();
    let tree_refs: Vec<&TerminalTree> = trees.iter().collect();
    // Extra edges among tree vertices are harmless: they stay inside A.
    let tree_vertices: Vec<usize> = trees.iter().flat_map(|t| t.tree_vertices.iter().copied()).collect();
    let noise: Vec<Edge> = (0..sets)
        .map(|_| (*tree_vertices.choose(&mut rng).unwrap(), *tree_vertices.choose(&mut rng).unwrap()))
        .collect();
    let edges = graph_of(next, &tree_refs, &paths.iter().collect::<Vec<_>>(), &noise);
    let (g, perm) = relabel(next, &edges, &mut rng)?;
    let support = VertexSet::from_iter_with_capacity(next, tree_vertices.iter().copied());
    let lw = LinkageWitness {
        host_hash: g.hash_hex(),
        terminal_sets: trees.iter().map(|t| map_tree(t, &perm)).collect(),
        paths: paths.iter().map(|p| p.iter().map(|&v| perm[v]).collect()).collect(),
        tree_support: map_set(&support, &perm),
    };
    Ok((g, lw))
}

/// How bundle paths pair the terminals of the left path with those of the right path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BundleOrder {
    Identity,
    Reversed,
    Random,
}

/// Tree made of a path through the terminals, with non-terminals spliced in
/// and non-terminal pendant leaves attached.
fn path_tree(terminals: Vec<usize>, next: &mut usize, rng: &mut ChaCha8Rng) -> TerminalTree {
    let mut spine = Vec::new();
    for &t in &terminals {
        if !spine.is_empty() && rng.gen_bool(0.4) {
            spine.push(*next);
            *next += 1;
        }
        spine.push(t);
    }
    let mut vertices = spine.clone();
    let mut edges: Vec<Edge> = spine.windows(2).map(|w| (w[0], w[1])).collect();
    for &v in &spine {
        if rng.gen_bool(0.25) {
            vertices.push(*next);
            edges.push((v, *next));
            *next += 1;
        }
    }
    TerminalTree {
        terminals,
        tree_vertices: vertices,
        tree_edges: edges,
    }
}

/// `k` pairs of path-shaped terminal trees with `set_size` terminals each,
/// joined by bundles whose order is fixed by `order`.
pub fn planted_paired_linkage(
    k: usize,
    set_size: usize,
    order: BundleOrder,
    seed: u64,
) -> Result<(Graph, PairedLinkage)> {
    if k == 0 || set_size == 0 {
        return Err(Error::Parameter("k and set_size must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut next = 2 * k * set_size;
    let mut pairs = Vec::with_capacity(k);
    for i in 0..k {
        let base = 2 * i * set_size;
        let left = path_tree((base..base + set_size).collect(), &mut next, &mut rng);
        let right = path_tree((base + set_size..base + 2 * set_size).collect(), &mut next, &mut rng);
        let mut sigma: Vec<usize> = (0..set_size).collect();
        match order {
            BundleOrder::Identity => {}
            BundleOrder::Reversed => sigma.reverse(),
            BundleOrder::Random => sigma.shuffle(&mut rng),
        }
        let paths = (0..set_size)
            .map(|t| fresh_path(left.terminals[t], right.terminals[sigma[t]], &mut next, &mut rng))
            .collect();
        pairs.push(LinkedPair { left, right, paths });
    }
    let trees: Vec<&TerminalTree> = pairs.iter().flat_map(|p| [&p.left, &p.right]).collect();
    let paths: Vec<&Vec<usize>> = pairs.iter().flat_map(|p| p.paths.iter()).collect();
    let edges = graph_of(next, &trees, &paths, &[]);
    let support =
        VertexSet::from_iter_with_capacity(next, trees.iter().flat_map(|t| t.tree_vertices.iter().copied()));
    let (g, perm) = relabel(next, &edges, &mut rng)?;
    let pl = PairedLinkage {
        host_hash: g.hash_hex(),
        pairs: pairs
            .iter()
            .map(|p| LinkedPair {
                left: map_tree(&p.left, &perm),
                right: map_tree(&p.right, &perm),
                paths: p.paths.iter().map(|path| path.iter().map(|&v| perm[v]).collect()).collect(),
            })
            .collect(),
        tree_support: map_set(&support, &perm),
    };
    Ok((g, pl))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::Limits;
    use crate::structure::linkage::{verify_linkage, verify_paired_linkage};
    use crate::width::verify_mesh;

    #[test]
    fn planted_mesh_verifies() {
        let l = Limits::default();
        for seed in 0..5 {
            let (g, w) = planted_mesh(1, 1, seed).unwrap();
            assert!(verify_mesh(&g, &w, &l).unwrap().is_valid());
            let (g, w) = planted_mesh(1, 3, seed).unwrap();
            assert!(verify_mesh(&g, &w, &l).unwrap().is_valid());
        }
    }

    #[test]
    fn planted_witnesses_verify() {
        for seed in 0..10 {
            let (g, lw) = planted_linkage(1, 2, seed).unwrap();
            assert!(verify_linkage(&g, &lw).is_valid());
            let (g, pl) = planted_paired_linkage(2, 5, BundleOrder::Random, seed).unwrap();
            assert!(verify_paired_linkage(&g, &pl).is_valid());
        }
    }

    #[test]
    fn planted_multigraph_shape() {
        let (b, left) = planted_bipartite_multigraph(2, 3, 7).unwrap();
        assert_eq!(left.len(), 48);
        assert!((0..b.n()).all(|v| b.multidegree(v) == 36));
    }
}
