use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};
use crate::verdict::Verdict;

/// Bags indexed by the nodes of a tree.
///
/// The width is the largest bag size minus one; decompositions whose bags are
/// all empty (only possible for the empty graph) have width 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub tree: Graph,
    pub bags: Vec<VertexSet>,
    pub width: usize,
}

impl TreeDecomposition {
    pub fn new(tree: Graph, bags: Vec<VertexSet>) -> Self {
        let width = bags.iter().map(VertexSet::len).max().unwrap_or(0).saturating_sub(1);
        TreeDecomposition { tree, bags, width }
    }

    /// A single bag holding every vertex.
    pub fn trivial(g: &Graph) -> Self {
        TreeDecomposition::new(Graph::empty(1), vec![VertexSet::full(g.n())])
    }

    pub fn is_path(&self) -> bool {
        self.tree.max_degree() <= 2
    }
}

pub fn verify_decomposition(g: &Graph, td: &TreeDecomposition) -> Verdict {
    let nodes = td.tree.n();
    if td.bags.len() != nodes {
        return Verdict::fail("shape", format!("{} bags for {} tree nodes", td.bags.len(), nodes));
    }
    if !td.tree.is_tree() {
        return Verdict::fail("tree", "the decomposition tree is not a tree");
    }
    for (t, bag) in td.bags.iter().enumerate() {
        if let Some(v) = bag.iter().find(|&v| v >= g.n()) {
            return Verdict::fail("bag range", format!("bag {t} holds vertex {v} outside the graph"));
        }
    }
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (t, bag) in td.bags.iter().enumerate() {
        for v in bag.iter() {
            holders[v].push(t);
        }
    }
    if let Some(v) = (0..g.n()).find(|&v| holders[v].is_empty()) {
        return Verdict::fail("vertex coverage", format!("vertex {v} is in no bag"));
    }
    for (u, v) in g.edges() {
        if !td.bags.iter().any(|b| b.contains(u) && b.contains(v)) {
            return Verdict::fail("edge coverage", format!("edge {{{u}, {v}}} is in no bag"));
        }
    }
    for (v, nodes_of_v) in holders.iter().enumerate() {
        if !td.tree.induced(nodes_of_v).is_connected() {
            return Verdict::fail(
                "connectivity of occurrence",
                format!("bags containing vertex {v} do not form a subtree: {nodes_of_v:?}"),
            );
        }
    }
    let actual = td.bags.iter().map(VertexSet::len).max().unwrap_or(0).saturating_sub(1);
    if actual != td.width {
        return Verdict::fail("declared width", format!("declared {}, actual {actual}", td.width));
    }
    Verdict::ok()
}

/// Tree decomposition induced by an elimination ordering.
///
/// Eliminating `v` creates the bag `{v} ∪ N⁺(v)` where `N⁺(v)` are the
/// neighbours of `v` in the filled graph that are eliminated later. The bag
/// of `v` hangs below the bag of the earliest-eliminated vertex in `N⁺(v)`;
/// the resulting forest is chained into a tree.
pub fn decomposition_from_elimination(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition::new(Graph::empty(1), vec![VertexSet::new(0)]);
    }
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut adj: Vec<VertexSet> = (0..n)
        .map(|v| VertexSet::from_iter_with_capacity(n, g.neighbors(v).iter().copied()))
        .collect();
    let mut bags = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(n);
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<usize> = adj[v].iter().filter(|&w| position[w] > i).collect();
        for (a, &x) in later.iter().enumerate() {
            for &y in &later[a + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        match later.iter().map(|&w| position[w]).min() {
            Some(p) => edges.push((i, p)),
            None => roots.push(i),
        }
        let mut bag = VertexSet::from_iter_with_capacity(n, later);
        bag.insert(v);
        bags.push(bag);
    }
    for pair in roots.windows(2) {
        edges.push((pair[0], pair[1]));
    }
    let tree = Graph::new(n, edges).expect("elimination tree edges are valid");
    TreeDecomposition::new(tree, bags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn set(n: usize, members: &[usize]) -> VertexSet {
        VertexSet::from_iter_with_capacity(n, members.iter().copied())
    }

    #[test]
    fn single_bag_is_valid() {
        let g = generate(&Family::Complete { n: 5 }).unwrap();
        let td = TreeDecomposition::trivial(&g);
        assert!(verify_decomposition(&g, &td).is_valid());
        assert_eq!(td.width, 4);
    }

    #[test]
    fn missing_edge_and_broken_occurrence() {
        let g = generate(&Family::Path { n: 3 }).unwrap();
        let path2 = Graph::new(2, [(0, 1)]).unwrap();
        let td = TreeDecomposition::new(path2.clone(), vec![set(3, &[0, 1]), set(3, &[2])]);
        assert_eq!(verify_decomposition(&g, &td).clause(), Some("edge coverage"));
        let path3 = generate(&Family::Path { n: 3 }).unwrap();
        let td = TreeDecomposition::new(path3, vec![set(3, &[0, 1]), set(3, &[1, 2]), set(3, &[0])]);
        assert_eq!(verify_decomposition(&g, &td).clause(), Some("connectivity of occurrence"));
        let mut td = TreeDecomposition::new(path2, vec![set(3, &[0, 1]), set(3, &[1, 2])]);
        assert!(verify_decomposition(&g, &td).is_valid());
        td.width = 2;
        assert_eq!(verify_decomposition(&g, &td).clause(), Some("declared width"));
    }

    #[test]
    fn elimination_orders_give_valid_decompositions() {
        for seed in 0..20 {
            let g = generate(&Family::RandomGnp { n: 12, p: 0.3, seed }).unwrap();
            let order: Vec<usize> = (0..12).rev().collect();
            let td = decomposition_from_elimination(&g, &order);
            assert!(verify_decomposition(&g, &td).is_valid());
        }
        let empty = Graph::empty(0);
        assert!(verify_decomposition(&empty, &decomposition_from_elimination(&empty, &[])).is_valid());
    }
}
