use std::collections::VecDeque;

use super::partition::Partition;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::verdict::Verdict;

pub fn check_ternary_tree(t: &Graph) -> Result<()> {
    if !t.is_tree() {
        return Err(Error::Precondition("the input is not a tree".into()));
    }
    if t.max_degree() > 3 {
        return Err(Error::Precondition(format!("tree has maximum degree {} > 3", t.max_degree())));
    }
    Ok(())
}

/// Vertex-disjoint subtrees of `t`, each holding at least `k` vertices of `x`.
///
/// Rooted at a leaf, the tree is scanned bottom up and a subtree is cut off as
/// soon as its uncut part holds `k` marked vertices. Every cut holds fewer
/// than `2k` marks, which yields at least `⌊|x|/(2k−1)⌋ − 1` subtrees.
pub fn tree_cut(t: &Graph, x: &VertexSet, k: usize) -> Result<Vec<VertexSet>> {
    if k == 0 {
        return Err(Error::Parameter("k must be at least 1".into()));
    }
    let n = t.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    check_ternary_tree(t)?;
    if let Some(v) = x.iter().find(|&v| v >= n) {
        return Err(Error::Precondition(format!("marked vertex {v} is not in the tree")));
    }
    let root = (0..n).find(|&v| t.degree(v) <= 1).expect("a finite tree has a leaf");
    let (order, parent) = dfs_order(t, root);
    let mut count = vec![0usize; n];
    let mut pending: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut out = Vec::new();
    for &v in order.iter().rev() {
        let mut part = vec![v];
        let mut c = usize::from(x.contains(v));
        for &w in t.neighbors(v) {
            if parent[w] == Some(v) {
                c += count[w];
                part.append(&mut pending[w]);
            }
        }
        if c >= k {
            out.push(VertexSet::from_iter_with_capacity(n, part));
            c = 0;
        } else {
            pending[v] = part;
        }
        count[v] = c;
    }
    Ok(out)
}

fn dfs_order(t: &Graph, root: usize) -> (Vec<usize>, Vec<Option<usize>>) {
    let n = t.n();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![root];
    seen[root] = true;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in t.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                stack.push(w);
            }
        }
    }
    (order, parent)
}

/// `⌊|x|/(2k−1)⌋ − 1`, possibly negative.
pub fn tree_cut_bound(marked: usize, k: usize) -> i64 {
    (marked / (2 * k - 1)) as i64 - 1
}

pub fn verify_tree_cut(t: &Graph, x: &VertexSet, k: usize, subtrees: &[VertexSet]) -> Verdict {
    let bound = tree_cut_bound(x.len(), k);
    if (subtrees.len() as i64) < bound {
        return Verdict::fail("count", format!("{} subtrees, at least {bound} required", subtrees.len()));
    }
    let mut used = VertexSet::new(t.n());
    for (i, s) in subtrees.iter().enumerate() {
        if s.iter().any(|v| v >= t.n()) || !used.is_disjoint(s) {
            return Verdict::fail("disjointness", format!("subtree {i} overlaps another or leaves the tree"));
        }
        used = used.union(s);
        if s.is_empty() || !t.induced(&s.to_vec()).is_connected() {
            return Verdict::fail("connectivity", format!("subtree {i} is not connected"));
        }
        let marks = s.intersection(x).len();
        if marks < k {
            return Verdict::fail("markers", format!("subtree {i} holds {marks} marked vertices"));
        }
    }
    Verdict::ok()
}

/// A longest path of a tree (two breadth-first sweeps).
pub fn long_path(t: &Graph) -> Result<Vec<usize>> {
    if t.n() == 0 {
        return Err(Error::Precondition("the tree is empty".into()));
    }
    check_ternary_tree(t)?;
    let far = |s: usize| {
        let d = t.bfs_distances(s);
        (0..t.n()).max_by_key(|&v| (d[v], std::cmp::Reverse(v))).expect("nonempty")
    };
    let a = far(0);
    let b = far(a);
    let d = t.bfs_distances(b);
    let mut path = vec![a];
    let mut v = a;
    while v != b {
        v = *t.neighbors(v).iter().find(|&&w| d[w] + 1 == d[v]).expect("distances decrease towards b");
        path.push(v);
    }
    Ok(path)
}

/// `2·log₂(2|X|/3)`, the guaranteed edge length of a longest path of a tree
/// of maximum degree 3 with `|X|` vertices of degree at most 2.
pub fn long_path_bound(low_degree_count: usize) -> f64 {
    2.0 * (2.0 * low_degree_count as f64 / 3.0).log2()
}

/// Splits `t` into one part per vertex `u` of the path `p`: the component of
/// `t − (p − u)` holding `u`.
pub fn path_partition(t: &Graph, p: &[usize]) -> Result<Partition> {
    let n = t.n();
    if !t.is_tree() {
        return Err(Error::Precondition("the input is not a tree".into()));
    }
    check_path(t, p)?;
    let on_path = VertexSet::from_iter_with_capacity(n, p.iter().copied());
    let mut label = vec![usize::MAX; n];
    for (i, &u) in p.iter().enumerate() {
        label[u] = i;
        let mut queue = VecDeque::from([u]);
        while let Some(v) = queue.pop_front() {
            for &w in t.neighbors(v) {
                if label[w] == usize::MAX && !on_path.contains(w) {
                    label[w] = i;
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(Partition::from_labels(n, &label, p.len()))
}

fn check_path(g: &Graph, p: &[usize]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::Precondition("the path is empty".into()));
    }
    let mut seen = VertexSet::new(g.n());
    for &v in p {
        if v >= g.n() || seen.contains(v) {
            return Err(Error::Precondition(format!("path vertex {v} is repeated or out of range")));
        }
        seen.insert(v);
    }
    if let Some(w) = p.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
        return Err(Error::Precondition(format!("{} and {} are not adjacent", w[0], w[1])));
    }
    Ok(())
}

pub fn verify_path_partition(t: &Graph, p: &[usize], partition: &Partition) -> Verdict {
    let verdict = partition.verify(t.n());
    if !verdict.is_valid() {
        return verdict;
    }
    if partition.parts.len() != p.len() {
        return Verdict::fail("path vertices", "one part per path vertex is required");
    }
    for (part, &u) in partition.parts.iter().zip(p) {
        if !part.contains(u) || p.iter().filter(|&&w| part.contains(w)).count() != 1 {
            return Verdict::fail("path vertices", format!("the part of {u} holds other path vertices"));
        }
        if !part.iter().any(|v| t.degree(v) <= 2) {
            return Verdict::fail("degree-two element", format!("the part of {u} has no vertex of degree ≤ 2"));
        }
    }
    Verdict::ok()
}
