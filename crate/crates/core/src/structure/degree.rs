use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::partition::{stiebitz_partition, stiebitz_run_from, Partition};
use crate::error::{Error, Result};
use crate::graph::{contraction_degeneracy_witness, degeneracy, generate, ContractionMode, Family, Graph, MultiGraph, VertexSet};
use crate::limits::Limits;
use crate::minors::{compose_models, find_minor_model, verify_model, MinorModel};
use crate::verdict::Verdict;

/// Vertices of degree below `2a·dgn(G)`; more than `(1 − 1/a)·n` of them exist.
pub fn low_degree_vertices(g: &Graph, a: usize) -> Result<VertexSet> {
    if a == 0 {
        return Err(Error::Parameter("a must be at least 1".into()));
    }
    if g.m() == 0 {
        // average degree < 2·dgn needs an edge
        return Err(Error::Precondition("the graph has no edges".into()));
    }
    let h = 2 * a * degeneracy(g).value;
    Ok(VertexSet::from_iter_with_capacity(g.n(), (0..g.n()).filter(|&v| g.degree(v) < h)))
}

/// `k` disjoint `K_{2,r}` models in a graph of contraction degeneracy at least `2kr`.
///
/// A minor of minimum degree `≥ 2kr` is split into `k` parts of minimum degree
/// `≥ 2r − 1`; each part has treewidth at least `2r − 1`, above the `2r − 2`
/// allowed without a `K_{2,r}` minor, so minor search finds one. Models are
/// lifted back through the minor.
///
/// With `r = 1` and `k ≥ 2` a part may be a matching, which has no `K_{2,1}`
/// minor, so that case is rejected.
pub fn extract_k2r_from_degeneracy(g: &Graph, k: usize, r: usize, limits: &Limits) -> Result<Vec<MinorModel>> {
    if k == 0 || r == 0 {
        return Err(Error::Parameter("k and r must be positive".into()));
    }
    if r == 1 && k > 1 {
        return Err(Error::Precondition("r = 1 needs k = 1: parts of minimum degree 1 can be matchings".into()));
    }
    let (value, witness) = contraction_degeneracy_witness(g, ContractionMode::Exact, limits)?;
    if value < 2 * k * r {
        return Err(Error::Precondition(format!("contraction degeneracy {value} is below 2kr = {}", 2 * k * r)));
    }
    let minor = Arc::new(witness.graph);
    if minor.min_degree() < 2 * k * r {
        return Err(Error::Invariant("degeneracy witness has low minimum degree".into()));
    }
    let host = Arc::new(g.clone());
    let outer = MinorModel::new(Arc::clone(&host), Arc::clone(&minor), witness.branch_sets);
    let pattern = Arc::new(generate(&Family::CompleteBipartite { p: 2, q: r })?);
    let partition = nonempty_partition(&minor, k)?;
    let mut out = Vec::with_capacity(k);
    for part in &partition.parts {
        let (sub, map) = minor.induced_set(part);
        if sub.min_degree() + 1 < 2 * r {
            return Err(Error::Invariant(format!("part of minimum degree {} < 2r − 1", sub.min_degree())));
        }
        let local = find_minor_model(&sub, &pattern, limits)?.ok_or_else(|| {
            Error::Invariant(format!("no K_(2,{r}) minor in a part of minimum degree {}", sub.min_degree()))
        })?;
        let model = compose_models(&local.lift(&minor, &map), &outer)?;
        if !verify_model(&model).is_valid() {
            return Err(Error::Invariant("lifted model fails verification".into()));
        }
        out.push(model);
    }
    Ok(out)
}

/// A degree-preserving partition into `k` nonempty parts.
///
/// The local search may empty a part, which satisfies the degree condition
/// vacuously but yields no model; further seeded starts are tried then.
fn nonempty_partition(g: &Graph, k: usize) -> Result<Partition> {
    if g.n() < k {
        return Err(Error::Precondition(format!("{} vertices cannot form {k} nonempty parts", g.n())));
    }
    let first = stiebitz_partition(g, k)?;
    if first.parts.iter().all(|p| !p.is_empty()) {
        return Ok(first);
    }
    for seed in 0..256u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut start: Vec<usize> = (0..g.n()).map(|v| v % k).collect();
        start.shuffle(&mut rng);
        let run = stiebitz_run_from(g, k, start)?;
        if run.partition.parts.iter().all(|p| !p.is_empty()) {
            return Ok(run.partition);
        }
    }
    Err(Error::Invariant(format!("local search kept emptying one of {k} parts")))
}

/// True when the models are valid and pairwise vertex-disjoint.
pub fn models_disjoint_and_valid(models: &[MinorModel]) -> bool {
    models.iter().all(|m| verify_model(m).is_valid())
        && (0..models.len()).all(|i| (i + 1..models.len()).all(|j| models[i].is_disjoint_from(&models[j])))
}

/// `k` vertex-disjoint multiedges of multiplicity at least `r` in a bipartite
/// multigraph with sides `left` and its complement.
///
/// Preconditions: equal sides of size `≥ 4k²r`, every multidegree exactly
/// `2kr²`, degeneracy below `2kr`. Low-degree vertices of one side are each
/// mapped to a neighbour of multiplicity `≥ r`; no image receives more than
/// `2kr` of them, so `k` distinct images appear.
pub fn disjoint_multiedges(b: &MultiGraph, left: &VertexSet, k: usize, r: usize) -> Result<Vec<(usize, usize)>> {
    if k == 0 || r == 0 {
        return Err(Error::Parameter("k and r must be positive".into()));
    }
    let n = b.n();
    let clause = |name: &str, detail: String| Err(Error::Precondition(format!("{name}: {detail}")));
    if left.iter().any(|v| v >= n) {
        return clause("bipartition", "side vertex out of range".into());
    }
    if let Some((u, v, _)) = b.edges().find(|&(u, v, _)| left.contains(u) == left.contains(v)) {
        return clause("bipartition", format!("edge {{{u}, {v}}} does not cross the sides"));
    }
    let (n1, n2) = (left.len(), n - left.len());
    if n1 != n2 || n1 < 4 * k * k * r {
        return clause("side sizes", format!("sides of sizes {n1} and {n2}, need equal and ≥ {}", 4 * k * k * r));
    }
    let target = 2 * k * r * r;
    if let Some(v) = (0..n).find(|&v| b.multidegree(v) != target) {
        return clause("multidegree", format!("vertex {v} has multidegree {}, need {target}", b.multidegree(v)));
    }
    let dgn = degeneracy(&b.underlying()).value;
    if dgn >= 2 * k * r {
        return clause("degeneracy", format!("degeneracy {dgn} ≥ 2kr = {}", 2 * k * r));
    }
    let low = |side: bool| -> Vec<usize> {
        (0..n).filter(|&v| left.contains(v) == side && b.degree(v) < 2 * k * r).collect()
    };
    let (lo_left, lo_right) = (low(true), low(false));
    let mut chosen = if lo_left.len() >= lo_right.len() { lo_left } else { lo_right };
    chosen.truncate(2 * k * k * r);
    let mut preimages: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &v in &chosen {
        let (u, m) = b
            .edges()
            .filter_map(|(x, y, m)| if x == v { Some((y, m)) } else if y == v { Some((x, m)) } else { None })
            .max_by_key(|&(u, m)| (m, std::cmp::Reverse(u)))
            .expect("multidegree is positive");
        if m < r {
            return Err(Error::Invariant(format!("vertex {v} of degree < 2kr has no multiplicity-{r} edge")));
        }
        preimages.entry(u).or_default().push(v);
    }
    if preimages.len() < k {
        return clause(
            "low-degree vertices",
            format!("{} low-degree vertices reach only {} distinct neighbours", chosen.len(), preimages.len()),
        );
    }
    Ok(preimages
        .into_iter()
        .take(k)
        .map(|(u, vs)| if left.contains(vs[0]) { (vs[0], u) } else { (u, vs[0]) })
        .collect())
}

pub fn verify_multiedges(b: &MultiGraph, k: usize, r: usize, edges: &[(usize, usize)]) -> Verdict {
    if edges.len() < k {
        return Verdict::fail("count", format!("{} multiedges, {k} required", edges.len()));
    }
    let mut used = VertexSet::new(b.n());
    for &(u, v) in edges {
        if u >= b.n() || v >= b.n() || b.multiplicity(u, v) < r {
            return Verdict::fail("multiplicity", format!("{{{u}, {v}}} has multiplicity below {r}"));
        }
        if used.contains(u) || used.contains(v) {
            return Verdict::fail("disjointness", format!("{{{u}, {v}}} shares a vertex"));
        }
        used.insert(u);
        used.insert(v);
    }
    Verdict::ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ContractionMode;
    use crate::structure::planted::planted_bipartite_multigraph;

    #[test]
    fn low_degree_examples() {
        let star = generate(&Family::Star { n: 9 }).unwrap();
        let low = low_degree_vertices(&star, 2).unwrap();
        assert_eq!(low.to_vec(), (1..10).collect::<Vec<_>>());
        for n in 2..8 {
            let kn = generate(&Family::Complete { n }).unwrap();
            assert_eq!(low_degree_vertices(&kn, 1).unwrap().len(), n);
        }
        assert_eq!(low_degree_vertices(&generate(&Family::Cycle { n: 6 }).unwrap(), 3).unwrap().len(), 6);
        assert!(low_degree_vertices(&Graph::empty(3), 1).is_err());
        assert!(low_degree_vertices(&star, 0).is_err());
    }

    #[test]
    fn low_degree_random() {
        for seed in 0..300 {
            let g = generate(&Family::RandomGnp { n: 5 + seed as usize % 30, p: 0.25, seed }).unwrap();
            if g.m() == 0 {
                continue;
            }
            let dgn = degeneracy(&g).value;
            for a in 1..=3 {
                let low = low_degree_vertices(&g, a).unwrap();
                assert!(a * low.len() > (a - 1) * g.n(), "seed {seed} a {a}");
                assert!(low.iter().all(|v| g.degree(v) < 2 * a * dgn));
            }
            assert!(g.average_degree() < 2.0 * dgn as f64);
        }
    }

    #[test]
    fn k2r_extraction_examples() {
        let l = Limits::default();
        let k5 = generate(&Family::Complete { n: 5 }).unwrap();
        let models = extract_k2r_from_degeneracy(&k5, 1, 2, &l).unwrap();
        assert_eq!(models.len(), 1);
        assert!(models_disjoint_and_valid(&models));

        let c7 = generate(&Family::Cycle { n: 7 }).unwrap();
        let models = extract_k2r_from_degeneracy(&c7, 1, 1, &l).unwrap();
        assert!(models_disjoint_and_valid(&models));

        let k9 = generate(&Family::Complete { n: 9 }).unwrap();
        let models = extract_k2r_from_degeneracy(&k9, 2, 2, &l).unwrap();
        assert_eq!(models.len(), 2);
        assert!(models_disjoint_and_valid(&models));

        assert!(matches!(extract_k2r_from_degeneracy(&c7, 1, 2, &l), Err(Error::Precondition(_))));
    }

    #[test]
    fn k2r_extraction_random_dense_graphs() {
        let l = Limits::default();
        for seed in 0..20 {
            let g = generate(&Family::RandomGnp { n: 10, p: 0.7, seed }).unwrap();
            let c = crate::graph::contraction_degeneracy(&g, ContractionMode::Exact, &l).unwrap();
            for (k, r) in [(1, 1), (1, 2), (2, 1), (1, 3), (2, 2)] {
                let got = extract_k2r_from_degeneracy(&g, k, r, &l);
                if c >= 2 * k * r && (r > 1 || k == 1) {
                    let models = got.unwrap();
                    assert_eq!(models.len(), k);
                    assert!(models_disjoint_and_valid(&models), "seed {seed}");
                } else {
                    assert!(matches!(got, Err(Error::Precondition(_))));
                }
            }
        }
    }

    #[test]
    fn multiedges_on_constructed_instances() {
        for (k, r) in [(1, 1), (1, 2), (2, 2), (2, 3), (1, 3)] {
            for seed in 0..10 {
                let (b, left) = planted_bipartite_multigraph(k, r, seed).unwrap();
                let edges = disjoint_multiedges(&b, &left, k, r).unwrap();
                assert!(verify_multiedges(&b, k, r, &edges).is_valid(), "k {k} r {r} seed {seed}");
            }
        }
    }

    #[test]
    fn multiedge_preconditions() {
        let (b, left) = planted_bipartite_multigraph(1, 2, 0).unwrap();
        let mut lopsided = left.clone();
        lopsided.remove(left.min().unwrap());
        let err = disjoint_multiedges(&b, &lopsided, 1, 2).unwrap_err().to_string();
        assert!(err.contains("bipartition") || err.contains("side sizes"), "{err}");
        let err = disjoint_multiedges(&b, &left, 1, 3).unwrap_err().to_string();
        assert!(err.contains("side sizes") || err.contains("multidegree"), "{err}");
        let mut small = MultiGraph::new(4);
        small.add_edge(0, 2, 4).unwrap();
        small.add_edge(1, 3, 4).unwrap();
        let err = disjoint_multiedges(&small, &VertexSet::from_mask(4, 0b11), 1, 2).unwrap_err().to_string();
        assert!(err.contains("side sizes"), "{err}");
    }
}
