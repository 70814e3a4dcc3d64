use serde::{Deserialize, Serialize};

use super::pack_cover::{pack_within, SupportFamily};
use crate::error::{Error, Result};
use crate::graph::{mask, Graph, VertexSet};
use crate::limits::Limits;
use crate::verdict::Verdict;
use crate::width::{verify_nice, NiceTreeDecomposition, NodeKind};

/// A pair `(A, B)` with `A ∪ B = V` and no edge between `A ∖ B` and `B ∖ A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub a: VertexSet,
    pub b: VertexSet,
    pub order: usize,
}

impl Separation {
    pub fn new(a: VertexSet, b: VertexSet) -> Self {
        let order = a.intersection(&b).len();
        Separation { a, b, order }
    }

    pub fn a_only(&self) -> VertexSet {
        self.a.difference(&self.b)
    }

    pub fn b_only(&self) -> VertexSet {
        self.b.difference(&self.a)
    }
}

pub fn verify_separation(g: &Graph, sep: &Separation) -> Verdict {
    if sep.a.union(&sep.b).len() != g.n() || sep.a.iter().chain(sep.b.iter()).any(|v| v >= g.n()) {
        return Verdict::fail("cover", "A ∪ B is not the vertex set");
    }
    if sep.order != sep.a.intersection(&sep.b).len() {
        return Verdict::fail("order", "declared order differs from |A ∩ B|");
    }
    let (left, right) = (sep.a_only(), sep.b_only());
    if let Some((u, v)) = g
        .edges()
        .find(|&(u, v)| (left.contains(u) && right.contains(v)) || (left.contains(v) && right.contains(u)))
    {
        return Verdict::fail("no crossing edges", format!("edge {{{u}, {v}}} joins A ∖ B and B ∖ A"));
    }
    Verdict::ok()
}

/// Separation produced by [`balanced_separation`] together with the data that justifies it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalancedSeparation {
    pub separation: Separation,
    /// Packing number of the whole graph.
    pub pack: usize,
    /// Node `t` with `p(t) > 2k/3` whose children all have `p ≤ 2k/3`.
    pub split_node: Option<usize>,
    /// Packing number of `G[A ∖ B]`.
    pub pack_a_only: usize,
    /// Set when the graph has no model and the trivial separation `(V, V)` is returned.
    pub pack_zero: bool,
    /// `p(t)` for every node of the nice decomposition.
    pub node_pack: Vec<usize>,
}

/// Separation of order at most `w + 1` whose side `A ∖ B` packs at most `⌊2k/3⌋` models.
///
/// `p(t)` is the packing number of `G_t`, the subgraph induced by the vertices
/// in bags below `t` (inclusive) minus the bag of `t`. At a forget node the
/// child's bag separates `G_{t'}` from the rest; at a join node the child
/// holding at least a third of the models is cut off by the shared bag.
pub fn balanced_separation(
    g: &Graph,
    h: &Graph,
    ntd: &NiceTreeDecomposition,
    limits: &Limits,
) -> Result<BalancedSeparation> {
    if h.n() == 0 || !h.is_connected() {
        return Err(Error::Precondition("the pattern must be connected".into()));
    }
    Error::check_size("host vertices for packing/covering", g.n(), super::pack_cover::pack_limit(h, limits))?;
    let adj = g.neighbor_masks()?;
    let family = SupportFamily::build(&adj, mask::full(g.n()), h, limits)?;
    split(g, ntd, &|m| pack_within(&family, m))
}

/// Core of [`balanced_separation`]; `pack` gives the packing number of `G[mask]`.
pub(crate) fn split(g: &Graph, ntd: &NiceTreeDecomposition, pack: &dyn Fn(u64) -> usize) -> Result<BalancedSeparation> {
    let verdict = verify_nice(g, ntd);
    if let Some(v) = verdict.violation {
        return Err(Error::InvalidDecomposition(format!("{}: {}", v.clause, v.detail)));
    }
    let n = g.n();
    let nodes = ntd.kinds.len();
    let bag_mask: Vec<u64> = (0..nodes).map(|t| ntd.bag(t).to_mask()).collect();
    let mut below = vec![0u64; nodes];
    let mut p = vec![0usize; nodes];
    for t in ntd.post_order() {
        let children = ntd.kinds[t].children();
        below[t] = children.iter().fold(bag_mask[t], |acc, &c| acc | below[c]);
        let gt = below[t] & !bag_mask[t];
        p[t] = pack(gt);
        let ok = match ntd.kinds[t] {
            NodeKind::Base => p[t] == 0,
            NodeKind::Introduce { child, .. } => p[t] == p[child],
            NodeKind::Forget { child, .. } => p[t] == p[child] || p[t] == p[child] + 1,
            NodeKind::Join { left, right } => p[t] == p[left] + p[right],
        };
        if !ok {
            return Err(Error::Invariant(format!(
                "packing values break the {:?} rule at node {t}: {} vs children {:?}",
                ntd.kinds[t],
                p[t],
                children.iter().map(|&c| p[c]).collect::<Vec<_>>()
            )));
        }
    }
    let k = p[ntd.root];
    if k == 0 {
        return Ok(BalancedSeparation {
            separation: Separation::new(VertexSet::full(n), VertexSet::full(n)),
            pack: 0,
            split_node: None,
            pack_a_only: 0,
            pack_zero: true,
            node_pack: p,
        });
    }
    let heavy = |x: usize| 3 * x > 2 * k;
    let qualifying: Vec<usize> = (0..nodes)
        .filter(|&t| heavy(p[t]) && ntd.kinds[t].children().iter().all(|&c| !heavy(p[c])))
        .collect();
    if qualifying.len() != 1 {
        return Err(Error::Invariant(format!("expected exactly one split node, found {qualifying:?}")));
    }
    let t = qualifying[0];
    let (cut_off, separator) = match ntd.kinds[t] {
        NodeKind::Forget { child, .. } => (below[child] & !bag_mask[child], bag_mask[child]),
        NodeKind::Join { left, right } => {
            let side = if 3 * p[left] >= k { left } else { right };
            (below[side] & !bag_mask[side], bag_mask[t])
        }
        kind => return Err(Error::Invariant(format!("split node {t} is a {kind:?} node"))),
    };
    let a = VertexSet::from_mask(n, cut_off | separator);
    let b = VertexSet::from_mask(n, mask::full(n) & !cut_off);
    let separation = Separation::new(a, b);
    let pack_a_only = pack(cut_off);
    let verdict = verify_separation(g, &separation);
    if !verdict.is_valid() || separation.order > ntd.width() + 1 || 3 * pack_a_only > 2 * k {
        return Err(Error::Invariant(format!(
            "separation at node {t} fails its guarantees: {verdict:?}, order {}, pack(A∖B) {pack_a_only}",
            separation.order
        )));
    }
    Ok(BalancedSeparation {
        separation,
        pack: k,
        split_node: Some(t),
        pack_a_only,
        pack_zero: false,
        node_pack: p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epd::pack_exact;
    use crate::graph::{generate, Family};
    use crate::width::{make_nice, treewidth_exact};

    fn run(g: &Graph, h: &Graph) -> (BalancedSeparation, usize) {
        let l = Limits::default();
        let (w, td) = treewidth_exact(g, &l).unwrap();
        let ntd = make_nice(g, &td).unwrap();
        (balanced_separation(g, h, &ntd, &l).unwrap(), w)
    }

    fn independent_pack(g: &Graph, h: &Graph, set: &VertexSet) -> usize {
        let (sub, _) = g.induced_set(set);
        pack_exact(&sub, h, &Limits::default()).unwrap().0
    }

    #[test]
    fn three_triangles() {
        let g = generate(&Family::DisjointCopies {
            k: 3,
            base: Box::new(Family::Complete { n: 3 }),
        })
        .unwrap();
        let k3 = generate(&Family::Complete { n: 3 }).unwrap();
        let (bs, w) = run(&g, &k3);
        assert_eq!(bs.pack, 3);
        assert!(bs.separation.order <= w + 1);
        assert!(verify_separation(&g, &bs.separation).is_valid());
        assert!(independent_pack(&g, &k3, &bs.separation.a_only()) <= 2);
    }

    #[test]
    fn single_triangle_and_pack_zero() {
        let k3 = generate(&Family::Complete { n: 3 }).unwrap();
        let (bs, _) = run(&k3, &k3);
        assert_eq!(independent_pack(&k3, &k3, &bs.separation.a_only()), 0);
        let tree = generate(&Family::Path { n: 5 }).unwrap();
        let (bs, _) = run(&tree, &k3);
        assert!(bs.pack_zero);
        assert_eq!(bs.separation.order, 5);
    }

    #[test]
    fn disconnected_pattern_is_rejected() {
        let l = Limits::default();
        let g = generate(&Family::Complete { n: 4 }).unwrap();
        let (_, td) = treewidth_exact(&g, &l).unwrap();
        let ntd = make_nice(&g, &td).unwrap();
        let h = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(balanced_separation(&g, &h, &ntd, &l), Err(Error::Precondition(_))));
    }

    #[test]
    fn random_hosts() {
        let k3 = generate(&Family::Complete { n: 3 }).unwrap();
        for seed in 0..15 {
            let g = generate(&Family::RandomGnp { n: 12, p: 0.25, seed }).unwrap();
            let (bs, w) = run(&g, &k3);
            if bs.pack_zero {
                continue;
            }
            assert!(verify_separation(&g, &bs.separation).is_valid());
            assert!(bs.separation.order <= w + 1);
            assert!(3 * independent_pack(&g, &k3, &bs.separation.a_only()) <= 2 * bs.pack);
        }
    }
}
