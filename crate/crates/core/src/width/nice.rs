use serde::{Deserialize, Serialize};

use super::decomposition::{verify_decomposition, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::verdict::Verdict;

/// Role of a node in a nice tree decomposition, with links to its children.
///
/// Introduce: the node's bag is the child's bag plus `vertex`.
/// Forget: the node's bag is the child's bag minus `vertex`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NodeKind {
    Base,
    Introduce { vertex: usize, child: usize },
    Forget { vertex: usize, child: usize },
    Join { left: usize, right: usize },
}

impl NodeKind {
    pub fn children(&self) -> Vec<usize> {
        match *self {
            NodeKind::Base => vec![],
            NodeKind::Introduce { child, .. } | NodeKind::Forget { child, .. } => vec![child],
            NodeKind::Join { left, right } => vec![left, right],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NiceTreeDecomposition {
    pub decomposition: TreeDecomposition,
    pub root: usize,
    pub kinds: Vec<NodeKind>,
}

impl NiceTreeDecomposition {
    pub fn width(&self) -> usize {
        self.decomposition.width
    }

    pub fn bag(&self, t: usize) -> &VertexSet {
        &self.decomposition.bags[t]
    }

    /// Nodes ordered so that children precede their parents.
    pub fn post_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.kinds.len());
        let mut stack = vec![(self.root, false)];
        while let Some((t, expanded)) = stack.pop() {
            if expanded {
                out.push(t);
            } else {
                stack.push((t, true));
                for c in self.kinds[t].children().into_iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        out
    }
}

struct Builder {
    bags: Vec<VertexSet>,
    kinds: Vec<NodeKind>,
}

impl Builder {
    fn push(&mut self, bag: VertexSet, kind: NodeKind) -> usize {
        self.bags.push(bag);
        self.kinds.push(kind);
        self.bags.len() - 1
    }

    /// Forget/introduce chain from node `from` up to a node whose bag is `target`.
    fn chain(&mut self, mut from: usize, target: &VertexSet) -> usize {
        let start = self.bags[from].clone();
        for v in start.difference(target).iter() {
            let mut bag = self.bags[from].clone();
            bag.remove(v);
            from = self.push(bag, NodeKind::Forget { vertex: v, child: from });
        }
        for v in target.difference(&start).iter() {
            let mut bag = self.bags[from].clone();
            bag.insert(v);
            from = self.push(bag, NodeKind::Introduce { vertex: v, child: from });
        }
        from
    }
}

/// Converts a valid tree decomposition into a nice one of the same width.
///
/// The input is rooted at its node 0. Children are linked to their parent by
/// forget-then-introduce chains, several children are merged by binary joins,
/// leaves grow from an empty base bag and a final forget chain empties the root.
pub fn make_nice(g: &Graph, td: &TreeDecomposition) -> Result<NiceTreeDecomposition> {
    let verdict = verify_decomposition(g, td);
    if let Some(v) = verdict.violation {
        return Err(Error::InvalidDecomposition(format!("{}: {}", v.clause, v.detail)));
    }
    let n = g.n();
    let bags: Vec<VertexSet> = td
        .bags
        .iter()
        .map(|b| VertexSet::from_iter_with_capacity(n, b.iter()))
        .collect();
    let nodes = td.tree.n();
    let mut parent = vec![usize::MAX; nodes];
    let mut order = vec![0];
    let mut seen = vec![false; nodes];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let t = order[i];
        i += 1;
        for &c in td.tree.neighbors(t) {
            if !seen[c] {
                seen[c] = true;
                parent[c] = t;
                order.push(c);
            }
        }
    }
    let mut builder = Builder {
        bags: Vec::new(),
        kinds: Vec::new(),
    };
    let mut top = vec![usize::MAX; nodes];
    for &t in order.iter().rev() {
        let children: Vec<usize> = td.tree.neighbors(t).iter().copied().filter(|&c| parent[c] == t && c != 0).collect();
        let mut current = None;
        for c in children {
            let linked = builder.chain(top[c], &bags[t]);
            current = Some(match current {
                None => linked,
                Some(left) => builder.push(bags[t].clone(), NodeKind::Join { left, right: linked }),
            });
        }
        top[t] = match current {
            Some(node) => node,
            None => {
                let base = builder.push(VertexSet::new(n), NodeKind::Base);
                builder.chain(base, &bags[t])
            }
        };
    }
    let mut root = builder.chain(top[0], &VertexSet::new(n));
    if builder.kinds[root] == NodeKind::Base {
        let right = builder.push(VertexSet::new(n), NodeKind::Base);
        root = builder.push(VertexSet::new(n), NodeKind::Join { left: root, right });
    }
    let edges: Vec<(usize, usize)> = builder
        .kinds
        .iter()
        .enumerate()
        .flat_map(|(t, k)| k.children().into_iter().map(move |c| (t, c)))
        .collect();
    let tree = Graph::new(builder.bags.len(), edges)?;
    let ntd = NiceTreeDecomposition {
        decomposition: TreeDecomposition::new(tree, builder.bags),
        root,
        kinds: builder.kinds,
    };
    if ntd.width() != td.width {
        return Err(Error::Invariant(format!("nice form has width {} instead of {}", ntd.width(), td.width)));
    }
    Ok(ntd)
}

pub fn verify_nice(g: &Graph, ntd: &NiceTreeDecomposition) -> Verdict {
    let td = &ntd.decomposition;
    let verdict = verify_decomposition(g, td);
    if !verdict.is_valid() {
        return verdict;
    }
    let nodes = td.tree.n();
    if ntd.kinds.len() != nodes || ntd.root >= nodes {
        return Verdict::fail("shape", "node kinds do not match the tree");
    }
    if !td.bags[ntd.root].is_empty() {
        return Verdict::fail("root bag", "the root bag is not empty");
    }
    if ntd.kinds[ntd.root] == NodeKind::Base {
        return Verdict::fail("base node", "the root is a base node");
    }
    let mut parents = vec![0usize; nodes];
    for (t, kind) in ntd.kinds.iter().enumerate() {
        let bag = &td.bags[t];
        for c in kind.children() {
            if c >= nodes || !td.tree.has_edge(t, c) {
                return Verdict::fail("rooting", format!("node {t} names {c} as a child but they are not adjacent"));
            }
            parents[c] += 1;
        }
        let ok = match *kind {
            NodeKind::Base => bag.is_empty(),
            NodeKind::Introduce { vertex, child } => {
                let below = &td.bags[child];
                !below.contains(vertex) && bag.contains(vertex) && {
                    let mut b = below.clone();
                    b.insert(vertex);
                    &b == bag
                }
            }
            NodeKind::Forget { vertex, child } => {
                let below = &td.bags[child];
                below.contains(vertex) && !bag.contains(vertex) && {
                    let mut b = bag.clone();
                    b.insert(vertex);
                    &b == below
                }
            }
            NodeKind::Join { left, right } => left != right && &td.bags[left] == bag && &td.bags[right] == bag,
        };
        if !ok {
            return Verdict::fail("node kind", format!("node {t} violates its {kind:?} clause"));
        }
    }
    for (t, &count) in parents.iter().enumerate() {
        let expected = usize::from(t != ntd.root);
        if count != expected {
            return Verdict::fail("rooting", format!("node {t} has {count} parents"));
        }
    }
    Verdict::ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};
    use crate::limits::Limits;
    use crate::width::{pathwidth_exact, treewidth_exact};

    #[test]
    fn single_vertex() {
        let g = Graph::empty(1);
        let td = TreeDecomposition::trivial(&g);
        let ntd = make_nice(&g, &td).unwrap();
        assert!(verify_nice(&g, &ntd).is_valid());
        assert_eq!(ntd.kinds.len(), 3);
        assert_eq!(ntd.kinds[ntd.root], NodeKind::Forget { vertex: 0, child: 1 });
        assert_eq!(ntd.kinds[1], NodeKind::Introduce { vertex: 0, child: 0 });
        assert_eq!(ntd.kinds[0], NodeKind::Base);
        assert_eq!(ntd.width(), 0);
    }

    #[test]
    fn empty_graph() {
        let g = Graph::empty(0);
        let (_, td) = treewidth_exact(&g, &Limits::default()).unwrap();
        let ntd = make_nice(&g, &td).unwrap();
        assert!(verify_nice(&g, &ntd).is_valid());
    }

    #[test]
    fn cycle_and_paths() {
        let c4 = generate(&Family::Cycle { n: 4 }).unwrap();
        let (_, td) = treewidth_exact(&c4, &Limits::default()).unwrap();
        let ntd = make_nice(&c4, &td).unwrap();
        assert!(verify_nice(&c4, &ntd).is_valid());
        assert_eq!(ntd.width(), 2);

        let xi = generate(&Family::Xi { r: 4 }).unwrap();
        let (_, pd) = pathwidth_exact(&xi, &Limits::default()).unwrap();
        let ntd = make_nice(&xi, &pd).unwrap();
        assert!(verify_nice(&xi, &ntd).is_valid());
        assert!(!ntd.kinds.iter().any(|k| matches!(k, NodeKind::Join { .. })));
    }

    #[test]
    fn random_graphs_and_invalid_input() {
        for seed in 0..30 {
            let g = generate(&Family::RandomGnp { n: 11, p: 0.3, seed }).unwrap();
            let (w, td) = treewidth_exact(&g, &Limits::default()).unwrap();
            let ntd = make_nice(&g, &td).unwrap();
            assert!(verify_nice(&g, &ntd).is_valid(), "seed {seed}");
            assert_eq!(ntd.width(), w);
            assert!(ntd.kinds.len() <= 4 * (w + 1) * g.n().max(1) + 4);
            assert_eq!(ntd.post_order().len(), ntd.kinds.len());
        }
        let g = generate(&Family::Path { n: 3 }).unwrap();
        let bad = TreeDecomposition::new(Graph::empty(1), vec![VertexSet::from_iter_with_capacity(3, [0, 1])]);
        assert!(matches!(make_nice(&g, &bad), Err(Error::InvalidDecomposition(_))));
    }

    #[test]
    fn tampered_kind_is_reported() {
        let g = generate(&Family::Cycle { n: 4 }).unwrap();
        let (_, td) = treewidth_exact(&g, &Limits::default()).unwrap();
        let mut ntd = make_nice(&g, &td).unwrap();
        let t = ntd
            .kinds
            .iter()
            .position(|k| matches!(k, NodeKind::Introduce { .. }))
            .unwrap();
        if let NodeKind::Introduce { vertex, child } = ntd.kinds[t] {
            ntd.kinds[t] = NodeKind::Forget { vertex, child };
        }
        assert_eq!(verify_nice(&g, &ntd).clause(), Some("node kind"));
    }
}
