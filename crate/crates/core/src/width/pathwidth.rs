use super::decomposition::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{mask, Graph, VertexSet};
use crate::limits::Limits;

/// Exact pathwidth as the vertex separation number, with a path decomposition.
///
/// `f(S)` is the best possible maximum boundary over layouts starting with
/// `S`; the boundary of a prefix is the set of its vertices that still have a
/// neighbour outside it.
pub fn pathwidth_exact(g: &Graph, limits: &Limits) -> Result<(usize, TreeDecomposition)> {
    let n = g.n();
    Error::check_size("vertices for exact pathwidth", n, limits.pathwidth)?;
    if n == 0 {
        return Ok((0, TreeDecomposition::new(Graph::empty(1), vec![VertexSet::new(0)])));
    }
    let adj = g.neighbor_masks()?;
    let full = mask::full(n);
    let boundary = |s: u64| mask::bits(s).filter(|&v| adj[v] & !s != 0).count() as u8;
    let size = 1usize << n;
    let mut f = vec![u8::MAX; size];
    let mut choice = vec![0u8; size];
    f[0] = 0;
    for s in 1..size as u64 {
        let own = boundary(s);
        let (best, last) = mask::bits(s)
            .map(|v| (f[(s & !mask::bit(v)) as usize], v))
            .min()
            .expect("non-empty set");
        f[s as usize] = own.max(best);
        choice[s as usize] = last as u8;
    }
    let mut layout = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = choice[s as usize] as usize;
        layout.push(v);
        s &= !mask::bit(v);
    }
    layout.reverse();
    let mut bags = Vec::with_capacity(n);
    let mut prefix = 0u64;
    for &v in &layout {
        let open = mask::bits(prefix).filter(|&u| adj[u] & !prefix != 0);
        let mut bag = VertexSet::from_iter_with_capacity(n, open);
        bag.insert(v);
        bags.push(bag);
        prefix |= mask::bit(v);
    }
    let tree = Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid");
    let td = TreeDecomposition::new(tree, bags);
    let width = f[full as usize] as usize;
    if td.width != width {
        return Err(Error::Invariant(format!("layout realises width {} instead of {width}", td.width)));
    }
    Ok((width, td))
}
