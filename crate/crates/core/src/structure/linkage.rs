use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::trees::tree_cut;
use crate::epd::bounds::linkage_mesh_order;
use crate::error::{Error, Result};
use crate::graph::{degeneracy, Edge, Graph, MultiGraph, VertexSet};
use crate::limits::Limits;
use crate::verdict::Verdict;
use crate::width::flow::vertex_disjoint_paths;
use crate::width::{verify_mesh, verify_mesh_structure, MeshWitness};

/// A terminal set with a tree of `G` connecting it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerminalTree {
    pub terminals: Vec<usize>,
    pub tree_vertices: Vec<usize>,
    pub tree_edges: Vec<Edge>,
}

impl TerminalTree {
    pub fn vertex_set(&self, n: usize) -> VertexSet {
        VertexSet::from_iter_with_capacity(n, self.tree_vertices.iter().copied())
    }

    /// Adjacency of the tree keyed by host vertex.
    pub fn adjacency(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut adj: BTreeMap<usize, Vec<usize>> = self.tree_vertices.iter().map(|&v| (v, Vec::new())).collect();
        for &(u, v) in &self.tree_edges {
            adj.entry(u).or_default().push(v);
            adj.entry(v).or_default().push(u);
        }
        adj
    }

    /// Why this is not a tree of `g` spanning its terminals, if it is not.
    fn defect(&self, g: &Graph) -> Option<String> {
        let n = g.n();
        let vs = self.vertex_set(n);
        if self.tree_vertices.iter().any(|&v| v >= n) || vs.len() != self.tree_vertices.len() {
            return Some("tree vertices repeat or leave the graph".into());
        }
        if let Some(&(u, v)) = self.tree_edges.iter().find(|&&(u, v)| !vs.contains(u) || !vs.contains(v) || !g.has_edge(u, v)) {
            return Some(format!("{{{u}, {v}}} is not an edge of G between tree vertices"));
        }
        if self.tree_vertices.is_empty() || self.tree_edges.len() + 1 != self.tree_vertices.len() {
            return Some("wrong number of tree edges".into());
        }
        let adj = self.adjacency();
        let mut seen = VertexSet::new(n);
        let mut stack = vec![self.tree_vertices[0]];
        seen.insert(self.tree_vertices[0]);
        while let Some(v) = stack.pop() {
            for &w in &adj[&v] {
                if !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        if seen.len() != vs.len() {
            return Some("tree edges are disconnected".into());
        }
        if let Some(t) = self.terminals.iter().find(|&&t| t >= n || !vs.contains(t)) {
            return Some(format!("terminal {t} is not on its tree"));
        }
        None
    }
}

/// `2m` terminal sets joined by disjoint paths from the first `m` sets to the last `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkageWitness {
    pub host_hash: String,
    pub terminal_sets: Vec<TerminalTree>,
    /// Each path is listed from its end in the first half to its end in the second half.
    pub paths: Vec<Vec<usize>>,
    /// The set `A` holding every tree and avoided by path interiors.
    pub tree_support: VertexSet,
}

/// Pairs of terminal sets, each pair joined by its own bundle of disjoint paths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairedLinkage {
    pub host_hash: String,
    pub pairs: Vec<LinkedPair>,
    pub tree_support: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkedPair {
    pub left: TerminalTree,
    pub right: TerminalTree,
    /// Paths from a terminal of `left` to a terminal of `right`.
    pub paths: Vec<Vec<usize>>,
}

/// Checks trees, path shapes, disjointness and interiors shared by both witnesses.
fn check_common(g: &Graph, trees: &[&TerminalTree], paths: &[&Vec<usize>], support: &VertexSet) -> Verdict {
    let n = g.n();
    let size = trees.first().map_or(0, |t| t.terminals.len());
    let mut all_terminals = VertexSet::new(n);
    for (i, t) in trees.iter().enumerate() {
        if t.terminals.len() != size || t.terminals.is_empty() {
            return Verdict::fail("terminal size", format!("terminal set {i} has {} elements", t.terminals.len()));
        }
        if let Some(d) = t.defect(g) {
            return Verdict::fail("tree", format!("tree {i}: {d}"));
        }
        if !t.vertex_set(n).is_subset(support) {
            return Verdict::fail("tree", format!("tree {i} leaves the tree support"));
        }
        for &v in &t.terminals {
            all_terminals.insert(v);
        }
    }
    let mut used = VertexSet::new(n);
    for (i, t) in trees.iter().enumerate() {
        let vs = t.vertex_set(n);
        if !used.is_disjoint(&vs) {
            return Verdict::fail("tree disjointness", format!("tree {i} meets an earlier tree"));
        }
        used = used.union(&vs);
    }
    let mut on_paths = VertexSet::new(n);
    for (i, p) in paths.iter().enumerate() {
        if p.len() < 3 || p.iter().any(|&v| v >= n) || p.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
            return Verdict::fail("path", format!("path {i} is not a path of length at least 2 in G"));
        }
        let vs = VertexSet::from_iter_with_capacity(n, p.iter().copied());
        if vs.len() != p.len() || !on_paths.is_disjoint(&vs) {
            return Verdict::fail("path disjointness", format!("path {i} repeats a vertex or meets another path"));
        }
        on_paths = on_paths.union(&vs);
        if let Some(&v) = p[1..p.len() - 1].iter().find(|&&v| support.contains(v) || all_terminals.contains(v)) {
            return Verdict::fail("path interior", format!("path {i} passes through {v} in A or a terminal set"));
        }
    }
    Verdict::ok()
}

pub fn verify_linkage(g: &Graph, lw: &LinkageWitness) -> Verdict {
    if lw.host_hash != g.hash_hex() {
        return Verdict::fail("hash", "witness belongs to another graph");
    }
    let m = lw.terminal_sets.len();
    if m == 0 || m % 2 == 1 {
        return Verdict::fail("set count", format!("{m} terminal sets, need a positive even number"));
    }
    let trees: Vec<&TerminalTree> = lw.terminal_sets.iter().collect();
    let paths: Vec<&Vec<usize>> = lw.paths.iter().collect();
    let verdict = check_common(g, &trees, &paths, &lw.tree_support);
    if !verdict.is_valid() {
        return verdict;
    }
    let owner = terminal_owner(&lw.terminal_sets);
    for (i, p) in lw.paths.iter().enumerate() {
        let (a, b) = (owner.get(&p[0]), owner.get(&p[p.len() - 1]));
        match (a, b) {
            (Some(&a), Some(&b)) if a < m / 2 && b >= m / 2 => {}
            _ => return Verdict::fail("path ends", format!("path {i} does not run from the first half to the second")),
        }
    }
    Verdict::ok()
}

pub fn verify_paired_linkage(g: &Graph, pl: &PairedLinkage) -> Verdict {
    if pl.host_hash != g.hash_hex() {
        return Verdict::fail("hash", "witness belongs to another graph");
    }
    let trees: Vec<&TerminalTree> = pl.pairs.iter().flat_map(|p| [&p.left, &p.right]).collect();
    let paths: Vec<&Vec<usize>> = pl.pairs.iter().flat_map(|p| p.paths.iter()).collect();
    let verdict = check_common(g, &trees, &paths, &pl.tree_support);
    if !verdict.is_valid() {
        return verdict;
    }
    for (i, pair) in pl.pairs.iter().enumerate() {
        if pair.paths.len() != pair.left.terminals.len() {
            return Verdict::fail("bundle size", format!("pair {i} has {} paths", pair.paths.len()));
        }
        for p in &pair.paths {
            if !pair.left.terminals.contains(&p[0]) || !pair.right.terminals.contains(&p[p.len() - 1]) {
                return Verdict::fail("path ends", format!("a path of pair {i} leaves its pair"));
            }
        }
    }
    Verdict::ok()
}

fn terminal_owner(sets: &[TerminalTree]) -> HashMap<usize, usize> {
    sets.iter()
        .enumerate()
        .flat_map(|(i, t)| t.terminals.iter().map(move |&v| (v, i)))
        .collect()
}

/// Smallest subtree of `tree` (vertices and edges in host ids) containing `keep`.
fn prune_to(vertices: &[usize], edges: &[Edge], keep: &VertexSet) -> (Vec<usize>, Vec<Edge>) {
    let mut alive: Vec<usize> = vertices.to_vec();
    let mut edges: Vec<Edge> = edges.to_vec();
    loop {
        let degree = |v: usize| edges.iter().filter(|&&(a, b)| a == v || b == v).count();
        let leaf = alive.iter().copied().find(|&v| !keep.contains(v) && degree(v) <= 1);
        let Some(v) = leaf else { break };
        alive.retain(|&w| w != v);
        edges.retain(|&(a, b)| a != v && b != v);
    }
    alive.sort_unstable();
    (alive, edges)
}

/// Terminal sets and external paths from a mesh.
///
/// The mesh tree is cut into `2q` disjoint subtrees holding `p` boundary
/// vertices each; these form the terminal sets, with trees pruned to their
/// terminals. Then `pq` disjoint paths through `B ∖ A` join the first `q`
/// sets to the last `q`, found by maximum flow.
pub fn mesh_to_linkage(g: &Graph, w: &MeshWitness, p: usize, q: usize, limits: &Limits) -> Result<LinkageWitness> {
    if p == 0 || q == 0 {
        return Err(Error::Parameter("p and q must be positive".into()));
    }
    let order = linkage_mesh_order(p as u64, q as u64) as usize;
    if w.order != order || w.connectivity < p * q {
        return Err(Error::Precondition(format!(
            "need a ({})-mesh of order {order}, got a {}-mesh of order {}",
            p * q,
            w.connectivity,
            w.order
        )));
    }
    let verdict = if w.order <= limits.mesh_order && w.connectivity <= limits.mesh_connectivity {
        verify_mesh(g, w, limits)?
    } else {
        verify_mesh_structure(g, w)
    };
    if let Some(v) = verdict.violation {
        return Err(Error::InvalidWitness(format!("mesh fails {}: {}", v.clause, v.detail)));
    }
    let n = g.n();
    let tree = w.tree()?;
    let boundary = w.boundary();
    let local_x = VertexSet::from_iter_with_capacity(
        tree.n(),
        (0..tree.n()).filter(|&i| boundary.contains(w.tree_vertices[i])),
    );
    let cuts = tree_cut(&tree, &local_x, p)?;
    if cuts.len() < 2 * q {
        return Err(Error::Invariant(format!("tree cut gave {} subtrees, need {}", cuts.len(), 2 * q)));
    }
    let mut sets = Vec::with_capacity(2 * q);
    for cut in cuts.iter().take(2 * q) {
        let terminals: Vec<usize> = cut
            .intersection(&local_x)
            .iter()
            .map(|i| w.tree_vertices[i])
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .take(p)
            .collect();
        let vertices: Vec<usize> = cut.iter().map(|i| w.tree_vertices[i]).collect();
        let inside = VertexSet::from_iter_with_capacity(n, vertices.iter().copied());
        let edges: Vec<Edge> =
            w.tree_edges.iter().copied().filter(|&(a, b)| inside.contains(a) && inside.contains(b)).collect();
        let keep = VertexSet::from_iter_with_capacity(n, terminals.iter().copied());
        let (tree_vertices, tree_edges) = prune_to(&vertices, &edges, &keep);
        sets.push(TerminalTree {
            terminals,
            tree_vertices,
            tree_edges,
        });
    }
    let z1: Vec<usize> = sets[..q].iter().flat_map(|t| t.terminals.iter().copied()).collect();
    let z2: Vec<usize> = sets[q..].iter().flat_map(|t| t.terminals.iter().copied()).collect();
    let ends = VertexSet::from_iter_with_capacity(n, z1.iter().chain(&z2).copied());
    let internal_ok = |v: usize| w.b.contains(v) && !w.a.contains(v);
    let edge_ok = |u: usize, v: usize| !(ends.contains(u) && ends.contains(v));
    let paths = vertex_disjoint_paths(g, &z1, &z2, &internal_ok, &edge_ok, p * q);
    if paths.len() < p * q {
        return Err(Error::InvalidWitness(format!("only {} of {} external paths exist", paths.len(), p * q)));
    }
    let lw = LinkageWitness {
        host_hash: g.hash_hex(),
        terminal_sets: sets,
        paths,
        tree_support: w.a.clone(),
    };
    let verdict = verify_linkage(g, &lw);
    if let Some(v) = verdict.violation {
        return Err(Error::Invariant(format!("constructed linkage fails {}: {}", v.clause, v.detail)));
    }
    Ok(lw)
}

/// Auxiliary bipartite multigraph on terminal sets: one edge per path.
pub fn auxiliary_multigraph(lw: &LinkageWitness) -> Result<MultiGraph> {
    let owner = terminal_owner(&lw.terminal_sets);
    let mut h = MultiGraph::new(lw.terminal_sets.len());
    for p in &lw.paths {
        let a = owner[&p[0]];
        let b = owner[&p[p.len() - 1]];
        h.add_edge(a, b, 1)?;
    }
    Ok(h)
}

/// `p` pairs of terminal sets, each joined by `q` disjoint paths.
///
/// Expects `8p²q` terminal sets of size `q` and `4p²q²` paths. The auxiliary
/// multigraph contracts every terminal set to one vertex; its multiedges of
/// multiplicity `q` are exactly the pairs whose terminals all lead to one
/// set, and a maximum matching among them supplies the `p` pairs.
pub fn linkage_to_pairs(g: &Graph, lw: &LinkageWitness, p: usize, q: usize) -> Result<PairedLinkage> {
    if p == 0 || q == 0 {
        return Err(Error::Parameter("p and q must be positive".into()));
    }
    if let Some(v) = verify_linkage(g, lw).violation {
        return Err(Error::InvalidWitness(format!("{}: {}", v.clause, v.detail)));
    }
    let sets = 8 * p * p * q;
    if lw.terminal_sets.len() != sets || lw.terminal_sets[0].terminals.len() != q || lw.paths.len() != 4 * p * p * q * q {
        return Err(Error::Precondition(format!(
            "need {sets} terminal sets of size {q} and {} paths, got {} sets of size {} and {} paths",
            4 * p * p * q * q,
            lw.terminal_sets.len(),
            lw.terminal_sets[0].terminals.len(),
            lw.paths.len()
        )));
    }
    let aux = auxiliary_multigraph(lw)?;
    let dgn = degeneracy(&aux.underlying()).value;
    if dgn >= 2 * p * q {
        return Err(Error::Precondition(format!("auxiliary degeneracy {dgn} ≥ 2pq = {}", 2 * p * q)));
    }
    let half = sets / 2;
    let heavy: Vec<Vec<usize>> = (0..half)
        .map(|i| (half..sets).filter(|&j| aux.multiplicity(i, j) >= q).collect())
        .collect();
    let matched = bipartite_matching(&heavy, sets);
    if matched.len() < p {
        return Err(Error::Precondition(format!(
            "heavy multiedges: only {} disjoint multiedges of multiplicity {q}",
            matched.len()
        )));
    }
    let owner = terminal_owner(&lw.terminal_sets);
    let pairs = matched
        .into_iter()
        .take(p)
        .map(|(i, j)| LinkedPair {
            left: lw.terminal_sets[i].clone(),
            right: lw.terminal_sets[j].clone(),
            paths: lw
                .paths
                .iter()
                .filter(|path| owner[&path[0]] == i && owner[&path[path.len() - 1]] == j)
                .take(q)
                .cloned()
                .collect(),
        })
        .collect();
    let pl = PairedLinkage {
        host_hash: lw.host_hash.clone(),
        pairs,
        tree_support: lw.tree_support.clone(),
    };
    if let Some(v) = verify_paired_linkage(g, &pl).violation {
        return Err(Error::Invariant(format!("constructed pairs fail {}: {}", v.clause, v.detail)));
    }
    Ok(pl)
}

/// Maximum matching by augmenting paths; returns `(left, right)` sorted by left.
fn bipartite_matching(adj: &[Vec<usize>], right_range: usize) -> Vec<(usize, usize)> {
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], mate: &mut [Option<usize>]) -> bool {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                if mate[v].map_or(true, |w| augment(w, adj, seen, mate)) {
                    mate[v] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    let mut mate = vec![None; right_range];
    for u in 0..adj.len() {
        let mut seen = vec![false; right_range];
        augment(u, adj, &mut seen, &mut mate);
    }
    let mut out: Vec<(usize, usize)> = mate.iter().enumerate().filter_map(|(v, m)| m.map(|u| (u, v))).collect();
    out.sort_unstable();
    out
}
