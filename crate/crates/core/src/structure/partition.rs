use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::verdict::Verdict;

/// Pairwise disjoint parts covering the vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub parts: Vec<VertexSet>,
}

impl Partition {
    pub fn from_labels(n: usize, labels: &[usize], count: usize) -> Self {
        let mut parts = vec![VertexSet::new(n); count];
        for (v, &l) in labels.iter().enumerate() {
            parts[l].insert(v);
        }
        Partition { parts }
    }

    /// Index of the part holding `v`.
    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(v))
    }

    pub fn verify(&self, n: usize) -> Verdict {
        let mut seen = VertexSet::new(n);
        for (i, part) in self.parts.iter().enumerate() {
            if let Some(v) = part.iter().find(|&v| v >= n) {
                return Verdict::fail("range", format!("part {i} holds vertex {v} outside 0..{n}"));
            }
            if !seen.is_disjoint(part) {
                return Verdict::fail("disjointness", format!("part {i} overlaps an earlier part"));
            }
            seen = seen.union(part);
        }
        if seen.len() != n {
            return Verdict::fail("cover", format!("parts cover {} of {n} vertices", seen.len()));
        }
        Verdict::ok()
    }
}

/// Outcome of the local search, with its potential history.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StiebitzRun {
    pub partition: Partition,
    pub moves: usize,
    /// Number of edges inside parts, before the first move and after each move.
    pub potentials: Vec<usize>,
}

fn violates(k: usize, inside: usize, degree: usize) -> bool {
    // inside < degree / k − 1
    k * (inside + 1) < degree
}

/// Splits `V(G)` into `k` parts with `deg_{V_i}(v) ≥ deg(v)/k − 1` for every `v ∈ V_i`.
///
/// Starts from the round-robin assignment and repeatedly moves the lowest
/// violating vertex to the part holding most of its neighbours. Each move
/// raises the number of edges inside parts, so at most `|E|` moves happen.
pub fn stiebitz_partition(g: &Graph, k: usize) -> Result<Partition> {
    Ok(stiebitz_run(g, k)?.partition)
}

pub fn stiebitz_run(g: &Graph, k: usize) -> Result<StiebitzRun> {
    if k == 0 {
        return Err(Error::Parameter("k must be at least 1".into()));
    }
    stiebitz_run_from(g, k, (0..g.n()).map(|v| v % k).collect())
}

/// Local search from a given assignment of vertices to parts `0..k`.
pub fn stiebitz_run_from(g: &Graph, k: usize, start: Vec<usize>) -> Result<StiebitzRun> {
    let n = g.n();
    if k == 0 || start.len() != n || start.iter().any(|&l| l >= k) {
        return Err(Error::Parameter("the start must label every vertex with a part in 0..k".into()));
    }
    let mut label = start;
    let inside = |label: &[usize], v: usize| g.neighbors(v).iter().filter(|&&w| label[w] == label[v]).count();
    let potential = |label: &[usize]| g.edges().filter(|&(u, v)| label[u] == label[v]).count();
    let mut potentials = vec![potential(&label)];
    loop {
        let Some(v) = (0..n).find(|&v| violates(k, inside(&label, v), g.degree(v))) else { break };
        let mut counts = vec![0usize; k];
        for &w in g.neighbors(v) {
            counts[label[w]] += 1;
        }
        let best = (0..k).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).expect("k ≥ 1");
        label[v] = best;
        let p = potential(&label);
        if p <= *potentials.last().expect("nonempty") || potentials.len() > g.m() + 1 {
            return Err(Error::Invariant(format!("local search potential stalled at {p} after moving {v}")));
        }
        potentials.push(p);
    }
    Ok(StiebitzRun {
        partition: Partition::from_labels(n, &label, k),
        moves: potentials.len() - 1,
        potentials,
    })
}

/// Checks the degree condition of every vertex in its own part.
pub fn verify_stiebitz(g: &Graph, k: usize, partition: &Partition) -> Verdict {
    let verdict = partition.verify(g.n());
    if !verdict.is_valid() {
        return verdict;
    }
    if partition.parts.len() != k {
        return Verdict::fail("part count", format!("{} parts, expected {k}", partition.parts.len()));
    }
    for part in &partition.parts {
        for v in part.iter() {
            let inside = g.neighbors(v).iter().filter(|&&w| part.contains(w)).count();
            if violates(k, inside, g.degree(v)) {
                return Verdict::fail(
                    "degree",
                    format!("vertex {v} has {inside} neighbours in its part, degree {}", g.degree(v)),
                );
            }
        }
    }
    Verdict::ok()
}
