use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use super::linkage::{verify_paired_linkage, LinkedPair, PairedLinkage, TerminalTree};
use super::sequences::{erdos_szekeres, Direction};
use crate::error::{Error, Result};
use crate::graph::{generate, Family, Graph, VertexSet};
use crate::minors::{verify_model, MinorModel};

fn check_input(g: &Graph, pl: &PairedLinkage, r: usize, k: usize) -> Result<()> {
    if r == 0 || k == 0 {
        return Err(Error::Parameter("r and k must be positive".into()));
    }
    if let Some(v) = verify_paired_linkage(g, pl).violation {
        return Err(Error::InvalidWitness(format!("{}: {}", v.clause, v.detail)));
    }
    if pl.pairs.len() < k {
        return Err(Error::Precondition(format!("{} pairs, need {k}", pl.pairs.len())));
    }
    Ok(())
}

fn finish(host: &Arc<Graph>, pattern: &Arc<Graph>, sets: Vec<Vec<VertexSet>>) -> Result<Vec<MinorModel>> {
    let models: Vec<MinorModel> =
        sets.into_iter().map(|b| MinorModel::new(Arc::clone(host), Arc::clone(pattern), b)).collect();
    for (i, m) in models.iter().enumerate() {
        if let Some(v) = verify_model(m).violation {
            return Err(Error::Invariant(format!("model {i} fails {}: {}", v.clause, v.detail)));
        }
        if models[..i].iter().any(|o| !o.is_disjoint_from(m)) {
            return Err(Error::Invariant(format!("model {i} meets an earlier model")));
        }
    }
    Ok(models)
}

/// `k` disjoint `K_{2,r}` models: the two trees of a pair are the hubs and
/// the interiors of `r` bundle paths are the other side.
pub fn pairs_to_k2r_models(g: &Graph, pl: &PairedLinkage, r: usize, k: usize) -> Result<Vec<MinorModel>> {
    check_input(g, pl, r, k)?;
    let n = g.n();
    let mut sets = Vec::with_capacity(k);
    for (i, pair) in pl.pairs.iter().take(k).enumerate() {
        if pair.paths.len() < r {
            return Err(Error::Precondition(format!("pair {i} has {} paths, need {r}", pair.paths.len())));
        }
        if pair.paths.iter().any(|p| p.len() < 3) {
            return Err(Error::Precondition(format!("pair {i} has a path of length below 2")));
        }
        let mut b = vec![pair.left.vertex_set(n), pair.right.vertex_set(n)];
        for p in pair.paths.iter().take(r) {
            b.push(VertexSet::from_iter_with_capacity(n, p[1..p.len() - 1].iter().copied()));
        }
        sets.push(b);
    }
    let pattern = Arc::new(generate(&Family::CompleteBipartite { p: 2, q: r })?);
    finish(&Arc::new(g.clone()), &pattern, sets)
}

/// Vertex sequence of the path between `a` and `b` in a tree.
fn tree_path(adj: &BTreeMap<usize, Vec<usize>>, a: usize, b: usize) -> Vec<usize> {
    let mut parent: HashMap<usize, usize> = HashMap::from([(a, a)]);
    let mut queue = VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        if v == b {
            break;
        }
        for &w in &adj[&v] {
            if !parent.contains_key(&w) {
                parent.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![b];
    while *path.last().unwrap() != a {
        let v = parent[path.last().unwrap()];
        path.push(v);
    }
    path.reverse();
    path
}

/// Among paths between two terminals of `t`, the first one maximizing `score`.
fn best_path(t: &TerminalTree, score: impl Fn(&[usize]) -> usize) -> Vec<usize> {
    let adj = t.adjacency();
    let mut best: Option<(usize, Vec<usize>)> = None;
    for (i, &a) in t.terminals.iter().enumerate() {
        for &b in &t.terminals[i..] {
            let path = tree_path(&adj, a, b);
            let s = score(&path);
            if best.as_ref().map_or(true, |(bs, _)| s > *bs) {
                best = Some((s, path));
            }
        }
    }
    best.map(|(_, p)| p).unwrap_or_default()
}

/// Cuts `path` into `starts.len()` consecutive segments, segment `i` starting at `starts[i]`.
fn segments(path: &[usize], starts: &[usize], n: usize) -> Vec<VertexSet> {
    (0..starts.len())
        .map(|i| {
            let from = if i == 0 { 0 } else { starts[i] };
            let to = starts.get(i + 1).copied().unwrap_or(path.len());
            VertexSet::from_iter_with_capacity(n, path[from..to].iter().copied())
        })
        .collect()
}

fn xi_branch_sets(pair: &LinkedPair, r: usize, n: usize, index: usize) -> Result<Vec<VertexSet>> {
    let partner: HashMap<usize, &Vec<usize>> = pair.paths.iter().map(|p| (p[0], p)).collect();
    let left_terminals: Vec<usize> = pair.left.terminals.clone();
    let pl = best_path(&pair.left, |p| p.iter().filter(|v| left_terminals.contains(v)).count());
    let pr = best_path(&pair.right, |p| {
        pl.iter().filter(|v| partner.get(v).is_some_and(|path| p.contains(path.last().unwrap()))).count()
    });
    let right_pos: HashMap<usize, usize> = pr.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    // Terminals of the left path, in path order, whose partner lies on the right path.
    let ordered: Vec<(usize, usize)> = pl
        .iter()
        .enumerate()
        .filter_map(|(i, v)| partner.get(v).and_then(|p| right_pos.get(p.last().unwrap())).map(|&j| (i, j)))
        .collect();
    let need = (r - 1) * (r - 1) + 1;
    if ordered.len() < need {
        return Err(Error::Precondition(format!(
            "too few ordered terminals: pair {index} has {} on matching tree paths, need {need}",
            ordered.len()
        )));
    }
    let seq: Vec<i64> = ordered.iter().map(|&(_, j)| j as i64).collect();
    let mono = erdos_szekeres(&seq, r, r)?;
    let chosen: Vec<(usize, usize)> = mono.indices.iter().take(r).map(|&i| ordered[i]).collect();
    let left_starts: Vec<usize> = chosen.iter().map(|&(i, _)| i).collect();
    let (pr, right_starts): (Vec<usize>, Vec<usize>) = match mono.direction {
        Direction::Increasing => (pr, chosen.iter().map(|&(_, j)| j).collect()),
        Direction::Decreasing => {
            let len = pr.len();
            (pr.into_iter().rev().collect(), chosen.iter().map(|&(_, j)| len - 1 - j).collect())
        }
    };
    let xs = segments(&pl, &left_starts, n);
    let zs = segments(&pr, &right_starts, n);
    let ys = chosen.iter().map(|&(i, _)| {
        let p = partner[&pl[i]];
        VertexSet::from_iter_with_capacity(n, p[1..p.len() - 1].iter().copied())
    });
    Ok(xs.into_iter().chain(ys).chain(zs).collect())
}

/// `k` disjoint `Ξ_r` models from paired terminal sets.
///
/// For each pair, the left tree path carrying most terminals becomes the
/// `x` row and the right tree path reaching most of their partners becomes
/// the `z` row. A monotone run of `r` partner positions picks the rungs, so
/// the right row can be cut into segments in the same order.
pub fn pairs_to_xi_models(g: &Graph, pl: &PairedLinkage, r: usize, k: usize) -> Result<Vec<MinorModel>> {
    check_input(g, pl, r, k)?;
    if let Some(i) = pl.pairs.iter().take(k).position(|p| p.paths.iter().any(|path| path.len() < 3)) {
        return Err(Error::Precondition(format!("pair {i} has a path of length below 2")));
    }
    let sets = pl
        .pairs
        .iter()
        .take(k)
        .enumerate()
        .map(|(i, pair)| xi_branch_sets(pair, r, g.n(), i))
        .collect::<Result<Vec<_>>>()?;
    let pattern = Arc::new(generate(&Family::Xi { r })?);
    finish(&Arc::new(g.clone()), &pattern, sets)
}
