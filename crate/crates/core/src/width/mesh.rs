use serde::{Deserialize, Serialize};

use super::flow::vertex_disjoint_paths;
use crate::error::{Error, Result};
use crate::graph::{mask, Edge, Graph, VertexSet};
use crate::limits::Limits;
use crate::verdict::Verdict;

/// A pair `(A, B)` covering the graph, with a tree of maximum degree 3 in `G[A]`
/// carrying the boundary `X = A ∩ B`, which is externally `connectivity`-connected in `B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeshWitness {
    pub a: VertexSet,
    pub b: VertexSet,
    pub tree_vertices: Vec<usize>,
    pub tree_edges: Vec<Edge>,
    pub order: usize,
    pub connectivity: usize,
}

impl MeshWitness {
    pub fn boundary(&self) -> VertexSet {
        self.a.intersection(&self.b)
    }

    pub fn tree(&self) -> Result<Graph> {
        let index = |v: usize| self.tree_vertices.iter().position(|&x| x == v);
        let edges = self
            .tree_edges
            .iter()
            .map(|&(u, v)| match (index(u), index(v)) {
                (Some(a), Some(b)) => Ok((a, b)),
                _ => Err(Error::InvalidWitness(format!("tree edge {{{u}, {v}}} leaves the tree vertices"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Graph::new(self.tree_vertices.len(), edges)
    }

    pub fn tree_degree(&self, v: usize) -> usize {
        self.tree_edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }
}

/// Searches for equal-size disjoint `X′, Y′ ⊆ x` (size at most `k`) that cannot be
/// joined by `|X′|` disjoint paths in `G[b]` avoiding `x` internally and the edges of `G[x]`.
pub fn external_linkage_failure(
    g: &Graph,
    x: &[usize],
    b: &VertexSet,
    k: usize,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let s = x.len();
    let in_x = VertexSet::from_iter_with_capacity(g.n(), x.iter().copied());
    let internal_ok = |v: usize| b.contains(v) && !in_x.contains(v);
    let edge_ok = |u: usize, v: usize| b.contains(u) && b.contains(v) && !(in_x.contains(u) && in_x.contains(v));
    for t in 1..=k.min(s / 2) {
        for left in subsets_of_size(s, t) {
            for right in subsets_of_size(s, t) {
                if left & right != 0 || left.trailing_zeros() > right.trailing_zeros() {
                    continue;
                }
                let xs: Vec<usize> = mask::bits(left).map(|i| x[i]).collect();
                let ys: Vec<usize> = mask::bits(right).map(|i| x[i]).collect();
                if vertex_disjoint_paths(g, &xs, &ys, &internal_ok, &edge_ok, t).len() < t {
                    return Some((xs, ys));
                }
            }
        }
    }
    None
}

fn subsets_of_size(n: usize, t: usize) -> impl Iterator<Item = u64> {
    (0..1u64 << n).filter(move |m| m.count_ones() as usize == t)
}

/// Checks every clause of the mesh definition and names the first one that fails.
pub fn verify_mesh(g: &Graph, w: &MeshWitness, limits: &Limits) -> Result<Verdict> {
    let x = w.boundary();
    Error::check_size("mesh order", w.order.max(x.len()), limits.mesh_order)?;
    Error::check_size("mesh connectivity", w.connectivity, limits.mesh_connectivity)?;
    let verdict = verify_mesh_structure(g, w);
    if !verdict.is_valid() {
        return Ok(verdict);
    }
    if let Some((xs, ys)) = external_linkage_failure(g, &x.to_vec(), &w.b, w.connectivity) {
        return Ok(Verdict::fail(
            "external connectivity",
            format!("{xs:?} and {ys:?} are not joined by {} disjoint external paths", xs.len()),
        ));
    }
    Ok(Verdict::ok())
}

/// Every clause except external connectivity; polynomial time.
pub fn verify_mesh_structure(g: &Graph, w: &MeshWitness) -> Verdict {
    let n = g.n();
    let x = w.boundary();
    if w.a.iter().chain(w.b.iter()).any(|v| v >= n) || w.a.union(&w.b).len() != n {
        return Verdict::fail("cover", "A ∪ B is not the vertex set");
    }
    let tree = match w.tree() {
        Ok(t) => t,
        Err(e) => return Verdict::fail("tree", e.to_string()),
    };
    let mut tree_set = VertexSet::new(n);
    for &v in &w.tree_vertices {
        if v >= n || !w.a.contains(v) || tree_set.contains(v) {
            return Verdict::fail("tree", format!("tree vertex {v} is repeated or outside A"));
        }
        tree_set.insert(v);
    }
    if let Some(&(u, v)) = w.tree_edges.iter().find(|&&(u, v)| !g.has_edge(u, v)) {
        return Verdict::fail("tree", format!("tree edge {{{u}, {v}}} is not an edge of G"));
    }
    if !tree.is_tree() || tree.m() != w.tree_edges.len() {
        return Verdict::fail("tree", "the tree edges do not form a tree");
    }
    if tree.max_degree() > 3 {
        return Verdict::fail("tree", "the tree has a vertex of degree above 3");
    }
    if let Some(v) = x.iter().find(|&v| !tree_set.contains(v) || w.tree_degree(v) > 2) {
        return Verdict::fail(
            "boundary",
            format!("boundary vertex {v} is missing from the tree or has tree degree above 2"),
        );
    }
    if !x.iter().any(|v| w.tree_degree(v) == 1) {
        return Verdict::fail("leaf", "no leaf of the tree lies in A ∩ B");
    }
    if x.len() != w.order {
        return Verdict::fail("order", format!("|A ∩ B| = {} but the order is {}", x.len(), w.order));
    }
    Verdict::ok()
}

/// Exhaustive search for a `k`-mesh of order `s` (tiny graphs only).
///
/// Without loss of generality `A` is exactly the vertex set of the tree, so the
/// search enumerates the boundary `X`, the extra tree vertices `A ∖ X`, and
/// degree-constrained spanning trees of `G[A]` with a designated leaf in `X`.
pub fn find_mesh(g: &Graph, k: usize, s: usize, limits: &Limits) -> Result<Option<MeshWitness>> {
    let n = g.n();
    Error::check_size("vertices for mesh search", n, limits.find_mesh_vertices)?;
    Error::check_size("mesh order", s, limits.find_mesh_order)?;
    Error::check_size("mesh connectivity", k, limits.mesh_connectivity)?;
    if s == 0 || s > n {
        return Ok(None);
    }
    let adj = g.neighbor_masks()?;
    let full = mask::full(n);
    for x_mask in subsets_of_size(n, s) {
        let x: Vec<usize> = mask::bits(x_mask).collect();
        if external_linkage_failure(g, &x, &VertexSet::full(n), k).is_some() {
            continue;
        }
        let rest = full & !x_mask;
        let mut failing: Vec<u64> = Vec::new();
        let mut extras: Vec<u64> = subset_masks(rest).collect();
        extras.sort_by_key(|m| (m.count_ones(), *m));
        for extra in extras {
            if failing.iter().any(|f| f & extra == *f) {
                continue;
            }
            let a_mask = x_mask | extra;
            if !mask::is_connected(&adj, a_mask) {
                continue;
            }
            let Some(tree_edges) = constrained_tree(&adj, a_mask, x_mask) else { continue };
            let b = VertexSet::from_mask(n, full & !extra);
            if external_linkage_failure(g, &x, &b, k).is_some() {
                failing.push(extra);
                continue;
            }
            let witness = MeshWitness {
                a: VertexSet::from_mask(n, a_mask),
                b,
                tree_vertices: mask::bits(a_mask).collect(),
                tree_edges,
                order: s,
                connectivity: k,
            };
            debug_assert!(verify_mesh(g, &witness, limits)?.is_valid());
            return Ok(Some(witness));
        }
    }
    Ok(None)
}

fn subset_masks(set: u64) -> impl Iterator<Item = u64> {
    // all submasks of `set`, including 0 and `set`
    let mut sub = Some(set);
    std::iter::from_fn(move || {
        let cur = sub?;
        sub = if cur == 0 { None } else { Some((cur - 1) & set) };
        Some(cur)
    })
}

/// Spanning tree of `G[a]` with degrees ≤ 3, ≤ 2 on `x`, and some vertex of `x` a leaf.
fn constrained_tree(adj: &[u64], a: u64, x: u64) -> Option<Vec<Edge>> {
    if a.count_ones() < 2 {
        return None;
    }
    for leaf in mask::bits(x) {
        let mut caps = [0u8; 64];
        for v in mask::bits(a) {
            caps[v] = if x & mask::bit(v) != 0 { 2 } else { 3 };
        }
        caps[leaf] = 1;
        let mut search = TreeSearch {
            adj,
            a,
            caps,
            degree: [0; 64],
            forbidden: [0; 64],
            edges: Vec::new(),
        };
        if search.grow(mask::bit(leaf)) {
            return Some(search.edges);
        }
    }
    None
}

struct TreeSearch<'a> {
    adj: &'a [u64],
    a: u64,
    caps: [u8; 64],
    degree: [u8; 64],
    forbidden: [u64; 64],
    edges: Vec<Edge>,
}

impl TreeSearch<'_> {
    fn open(&self, tree: u64) -> u64 {
        mask::bits(tree)
            .filter(|&w| self.degree[w] < self.caps[w])
            .fold(0, |m, w| m | mask::bit(w))
    }

    fn grow(&mut self, tree: u64) -> bool {
        if tree == self.a {
            return true;
        }
        // Every missing vertex must still be reachable through usable edges.
        let open = self.open(tree);
        let usable: Vec<u64> = (0..self.adj.len()).map(|v| self.adj[v] & !self.forbidden[v]).collect();
        if mask::reach(&usable, open, open | (self.a & !tree)) & self.a & !tree != self.a & !tree {
            return false;
        }
        let candidate = mask::bits(open).find_map(|w| {
            mask::lowest(self.adj[w] & self.a & !tree & !self.forbidden[w]).map(|v| (w, v))
        });
        let Some((w, v)) = candidate else { return false };
        self.degree[w] += 1;
        self.degree[v] += 1;
        self.edges.push((w.min(v), w.max(v)));
        if self.grow(tree | mask::bit(v)) {
            return true;
        }
        self.edges.pop();
        self.degree[w] -= 1;
        self.degree[v] -= 1;
        self.forbidden[w] |= mask::bit(v);
        self.forbidden[v] |= mask::bit(w);
        let found = self.grow(tree);
        self.forbidden[w] &= !mask::bit(v);
        self.forbidden[v] &= !mask::bit(w);
        found
    }
}
