//! Finite simple graphs and multigraphs on dense vertex ids.

mod degeneracy;
mod generate;
pub mod mask;
mod vertex_set;

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use degeneracy::{
    contraction_degeneracy, contraction_degeneracy_witness, degeneracy, ContractionMode,
    DegeneracyWitness, MinorWitness,
};
pub use generate::{generate, random_pw2_with_bags, Family};
pub use vertex_set::VertexSet;

pub type Edge = (usize, usize);

/// An immutable simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = Error;
    fn try_from(raw: RawGraph) -> Result<Graph> {
        Graph::new(raw.n, raw.edges)
    }
}

impl From<Graph> for RawGraph {
    fn from(g: Graph) -> RawGraph {
        RawGraph {
            n: g.n(),
            edges: g.edges().collect(),
        }
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    /// Builds a graph; repeated pairs collapse, loops and out-of-range ids are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Parameter(format!(
                    "edge {{{u}, {v}}} has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::Parameter(format!("loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Ok(Graph { adj, m: m / 2 })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn average_degree(&self) -> f64 {
        if self.n() == 0 {
            0.0
        } else {
            2.0 * self.m as f64 / self.n() as f64
        }
    }

    /// Adjacency as 64-bit masks; fails for more than 64 vertices.
    pub fn neighbor_masks(&self) -> Result<Vec<u64>> {
        Error::check_size("vertex count for bitmask algorithms", self.n(), 64)?;
        Ok(self
            .adj
            .iter()
            .map(|list| list.iter().fold(0u64, |m, &v| m | mask::bit(v)))
            .collect())
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        let mut m = 0;
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                if index[w] != usize::MAX {
                    adj[i].push(index[w]);
                    m += 1;
                }
            }
            adj[i].sort_unstable();
        }
        Graph { adj, m: m / 2 }
    }

    pub fn induced_set(&self, set: &VertexSet) -> (Graph, Vec<usize>) {
        let vertices = set.to_vec();
        (self.induced(&vertices), vertices)
    }

    /// Subgraph obtained by deleting `removed`, with the surviving original ids.
    pub fn without(&self, removed: &VertexSet) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n()).filter(|&v| !removed.contains(v)).collect();
        (self.induced(&keep), keep)
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let offset = self.n();
        let edges = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + offset, v + offset)));
        Graph::new(self.n() + other.n(), edges).expect("union of valid graphs is valid")
    }

    /// Connected components, each sorted, ordered by their smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.m == self.n() - 1 && self.is_connected()
    }

    /// BFS distances from `s` (usize::MAX for unreachable vertices).
    pub fn bfs_distances(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Contracts the edge `{u, v}`.
    ///
    /// The merged vertex takes id `min(u, v)`; ids above `max(u, v)` shift down by one.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<Contraction> {
        if !self.has_edge(u, v) {
            return Err(Error::MissingEdge(u, v));
        }
        let (keep, gone) = if u < v { (u, v) } else { (v, u) };
        let vertex_map: Vec<usize> = (0..self.n())
            .map(|x| match x.cmp(&gone) {
                std::cmp::Ordering::Less => x,
                std::cmp::Ordering::Equal => keep,
                std::cmp::Ordering::Greater => x - 1,
            })
            .collect();
        let edges = self
            .edges()
            .map(|(a, b)| (vertex_map[a], vertex_map[b]))
            .filter(|(a, b)| a != b);
        let graph = Graph::new(self.n() - 1, edges)?;
        Ok(Contraction { graph, vertex_map })
    }

    /// Canonical edge-list text; the basis of [`Graph::hash_hex`].
    pub fn canonical_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Short SHA-256 fingerprint of the canonical edge list.
    pub fn hash_hex(&self) -> String {
        use sha2::{Digest, Sha256};
        let digest = Sha256::digest(self.canonical_text().as_bytes());
        hex::encode(&digest[..8])
    }
}

/// Result of an edge contraction together with the old-to-new vertex map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    pub graph: Graph,
    pub vertex_map: Vec<usize>,
}

/// Undirected loopless multigraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiGraph {
    n: usize,
    #[serde(with = "multiedges_serde")]
    edges: BTreeMap<Edge, usize>,
}

mod multiedges_serde {
    use super::Edge;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(edges: &BTreeMap<Edge, usize>, s: S) -> Result<S::Ok, S::Error> {
        let list: Vec<(usize, usize, usize)> = edges.iter().map(|(&(u, v), &m)| (u, v, m)).collect();
        list.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Edge, usize>, D::Error> {
        let list = Vec::<(usize, usize, usize)>::deserialize(d)?;
        Ok(list.into_iter().map(|(u, v, m)| ((u, v), m)).collect())
    }
}

impl MultiGraph {
    pub fn new(n: usize) -> Self {
        MultiGraph {
            n,
            edges: BTreeMap::new(),
        }
    }

    /// Adds `multiplicity` parallel copies of `{u, v}`.
    pub fn add_edge(&mut self, u: usize, v: usize, multiplicity: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::Parameter(format!("edge {{{u}, {v}}} outside 0..{}", self.n)));
        }
        if u == v {
            return Err(Error::Parameter(format!("loop at vertex {u}")));
        }
        if multiplicity == 0 {
            return Ok(());
        }
        *self.edges.entry((u.min(v), u.max(v))).or_insert(0) += multiplicity;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.edges.get(&(u.min(v), u.max(v))).copied().unwrap_or(0)
    }

    /// Distinct edges with their multiplicities.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.edges.iter().map(|(&(u, v), &m)| (u, v, m))
    }

    /// Number of parallel edges incident to `v`.
    pub fn multidegree(&self, v: usize) -> usize {
        self.edges()
            .filter(|&(a, b, _)| a == v || b == v)
            .map(|(_, _, m)| m)
            .sum()
    }

    /// Number of distinct neighbours of `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.edges().filter(|&(a, b, _)| a == v || b == v).count()
    }

    /// The simple graph obtained by forgetting multiplicities.
    pub fn underlying(&self) -> Graph {
        Graph::new(self.n, self.edges.keys().copied()).expect("multigraph edges are valid")
    }
}
