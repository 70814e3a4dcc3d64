//! One trial per call: draw an instance, run the construction, check its output
//! with checks written here rather than the library's own verifiers where cheap.


use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::LemmaId;
use crate::epd::{balanced_separation, cover_exact, epgap_winwin, hitting_set_recursive, pack_exact, verify_certificate, verify_separation};
use crate::error::Error;
use crate::graph::{contraction_degeneracy, generate, ContractionMode, Family, Graph, MultiGraph, VertexSet};
use crate::io::write_graph6;
use crate::limits::Limits;
use crate::minors::{find_minor_model, verify_model, MinorModel};
use crate::structure::planted::{planted_bipartite_multigraph, planted_linkage, planted_mesh, planted_paired_linkage, BundleOrder};
use crate::structure::{
    disjoint_multiedges, erdos_szekeres, extract_k2r_from_degeneracy, linkage_to_pairs, long_path, long_path_bound,
    low_degree_vertices, mesh_to_linkage, pairs_to_k2r_models, pairs_to_xi_models, path_partition, stiebitz_partition,
    tree_cut, verify_linkage, check_pw2_minor_of_xi, Direction,
};
use crate::verdict::Verdict;
use crate::width::{find_mesh, make_nice, treewidth_exact, verify_decomposition, verify_mesh};

pub(super) struct Ctx<'a> {
    pub rng: ChaCha8Rng,
    pub fault: bool,
    pub limits: &'a Limits,
    pub instance: String,
}

pub(super) struct Failure {
    pub clause: String,
    pub detail: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            clause: "error".into(),
            detail: e.to_string(),
        }
    }
}

type Trial = std::result::Result<bool, Failure>;

fn fail(clause: &str, detail: impl Into<String>) -> Failure {
    Failure {
        clause: clause.into(),
        detail: detail.into(),
    }
}

fn ensure(cond: bool, clause: &str, detail: impl FnOnce() -> String) -> std::result::Result<(), Failure> {
    if cond {
        Ok(())
    } else {
        Err(fail(clause, detail()))
    }
}

fn ensure_verdict(v: Verdict) -> std::result::Result<(), Failure> {
    match v.violation {
        None => Ok(()),
        Some(v) => Err(fail(&v.clause, v.detail)),
    }
}

fn text(g: &Graph) -> String {
    write_graph6(g).unwrap_or_else(|_| format!("{:?}", g.edges().collect::<Vec<_>>()))
}

impl Ctx<'_> {
    fn gnp(&mut self, n: std::ops::RangeInclusive<usize>, p: std::ops::Range<f64>) -> Result<Graph, Failure> {
        let n = self.rng.gen_range(n);
        let p = self.rng.gen_range(p);
        let g = generate(&Family::RandomGnp { n, p, seed: self.rng.gen() })?;
        self.instance = format!("gnp n={n} p={p:.3} graph6={}", text(&g));
        Ok(g)
    }

    fn ternary(&mut self, max: usize) -> Result<Graph, Failure> {
        let n = self.rng.gen_range(1..=max);
        let t = generate(&Family::RandomTernaryTree { n, seed: self.rng.gen() })?;
        self.instance = format!("ternary tree graph6={}", text(&t));
        Ok(t)
    }

    fn note(&mut self, extra: String) {
        self.instance.push_str("; ");
        self.instance.push_str(&extra);
    }
}

pub(super) fn describe(lemma: LemmaId) -> &'static str {
    match lemma {
        LemmaId::Smalldeg => "G(n,p) with n in 1..=40, p in [0.05,0.6); a in {1,2,3}; edgeless draws are vacuous",
        LemmaId::TreeCut => "random ternary trees, n in 1..=60; markers drawn with density in [0.3,1]; k in {2,3}",
        LemmaId::Stiebitz => "G(n,p) with n in 1..=40, p in [0.05,0.7); k in {2,3,4}",
        LemmaId::ErdosSzekeres => "random distinct integers of length (k-1)(l-1)+1, (k,l) in {2..5}^2",
        LemmaId::PathTree => "random ternary trees, n in 1..=60; longest path against all-pairs BFS",
        LemmaId::Independent => "planted bipartite multigraphs, k in {1,2}, r in {1,2,3}",
        LemmaId::BigDegec => "K_n (n in 5..=9) or G(n,p) (n in 6..=10, p in [0.5,0.95)); k,r with 2kr <= dgnC",
        LemmaId::Pw2Xi => "random pathwidth-2 graphs, n in 1..=9",
        LemmaId::Twk2r => "G(n,p) with n in 1..=12, p in [0.1,0.5); r in {2,3}; checks tw <= 2r-2; hosts with a K_{2,r} minor are vacuous",
        LemmaId::MeshTiny => "G(n,p) with n in 1..=8, p in [0.2,0.9); 1 <= q <= p <= 3; tw < p+q-1 is vacuous",
        LemmaId::PackSep => "h in {K_3, K_{2,3}}; G(n,p) with n in 4..=14, p in [0.15,0.5); pack 0 is vacuous",
        LemmaId::SepEp => "h in {K_3, C_4, K_{2,3}}; G(n,p) with n in 3..=11, p in [0.15,0.55); k in 1..=3",
        LemmaId::PackLeCover => "h in {K_3, P_3, C_4, K_{2,3}}; G(n,p) with n in 2..=10, p in [0.1,0.6); brute-force cover for n <= 8",
        LemmaId::PipelinesTh1 => "planted paired linkages, k in {1,2}, r in {1,2,3}, bundle order random; planted meshes p,q in {1,2}",
        LemmaId::PipelinesTh2 => "planted linkages, p in {1,2}, q in {1,2,3}; planted meshes with p = 1, q in 1..=4",
    }
}

pub(super) fn run(lemma: LemmaId, ctx: &mut Ctx) -> Trial {
    match lemma {
        LemmaId::Smalldeg => smalldeg(ctx),
        LemmaId::TreeCut => tree_cut_trial(ctx),
        LemmaId::Stiebitz => stiebitz(ctx),
        LemmaId::ErdosSzekeres => es(ctx),
        LemmaId::PathTree => path_tree(ctx),
        LemmaId::Independent => independent(ctx),
        LemmaId::BigDegec => big_degec(ctx),
        LemmaId::Pw2Xi => pw2_xi(ctx),
        LemmaId::Twk2r => twk2r(ctx),
        LemmaId::MeshTiny => mesh_tiny(ctx),
        LemmaId::PackSep => pack_sep(ctx),
        LemmaId::SepEp => sep_ep(ctx),
        LemmaId::PackLeCover => pack_le_cover(ctx),
        LemmaId::PipelinesTh1 => pipelines_th1(ctx),
        LemmaId::PipelinesTh2 => pipelines_th2(ctx),
    }
}

/// Degeneracy by repeatedly deleting a vertex of minimum degree.
fn peel_degeneracy(g: &Graph) -> usize {
    let mut alive = vec![true; g.n()];
    let mut deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut best = 0;
    for _ in 0..g.n() {
        let v = (0..g.n()).filter(|&v| alive[v]).min_by_key(|&v| deg[v]).unwrap();
        best = best.max(deg[v]);
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
            }
        }
    }
    best
}

fn smalldeg(ctx: &mut Ctx) -> Trial {
    let g = ctx.gnp(1..=40, 0.05..0.6)?;
    let a = ctx.rng.gen_range(1..=3);
    ctx.note(format!("a={a}"));
    if g.m() == 0 {
        return Ok(false);
    }
    let mut low = low_degree_vertices(&g, a)?;
    if ctx.fault {
        low = VertexSet::new(g.n());
    }
    let dgn = peel_degeneracy(&g);
    let n = g.n();
    ensure(a * low.len() > (a - 1) * n, "size", || format!("{} low-degree vertices, n = {n}, a = {a}", low.len()))?;
    let expected = (0..n).filter(|&v| g.degree(v) < 2 * a * dgn).count();
    ensure(low.iter().all(|v| g.degree(v) < 2 * a * dgn) && low.len() == expected, "membership", || {
        format!("output differs from the vertices of degree < {}", 2 * a * dgn)
    })?;
    Ok(true)
}

fn connected_within(t: &Graph, s: &VertexSet) -> bool {
    let Some(start) = s.min() else { return false };
    let mut seen = VertexSet::new(t.n());
    seen.insert(start);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in t.neighbors(v) {
            if s.contains(w) && !seen.contains(w) {
                seen.insert(w);
                stack.push(w);
            }
        }
    }
    seen.len() == s.len()
}

fn tree_cut_trial(ctx: &mut Ctx) -> Trial {
    let t = ctx.ternary(60)?;
    let density = ctx.rng.gen_range(0.3..=1.0);
    let x = VertexSet::from_iter_with_capacity(t.n(), (0..t.n()).filter(|_| ctx.rng.gen_bool(density)));
    let k = ctx.rng.gen_range(2..=3);
    ctx.note(format!("k={k} x={:?}", x.to_vec()));
    let mut cuts = tree_cut(&t, &x, k)?;
    if ctx.fault {
        match cuts.first().cloned() {
            Some(c) => cuts.push(c),
            None => cuts.push(VertexSet::new(t.n())),
        }
    }
    let need = (x.len() / (2 * k - 1)) as i64 - 1;
    ensure(cuts.len() as i64 >= need, "count", || format!("{} subtrees, need {need}", cuts.len()))?;
    let mut used = VertexSet::new(t.n());
    for (i, c) in cuts.iter().enumerate() {
        ensure(used.is_disjoint(c), "disjointness", || format!("subtree {i} overlaps"))?;
        used = used.union(c);
        ensure(connected_within(&t, c), "connectivity", || format!("subtree {i} is not a subtree"))?;
        ensure(c.intersection(&x).len() >= k, "markers", || format!("subtree {i} has too few markers"))?;
    }
    Ok(true)
}

fn stiebitz(ctx: &mut Ctx) -> Trial {
    let g = ctx.gnp(1..=40, 0.05..0.7)?;
    let k = ctx.rng.gen_range(2..=4);
    ctx.note(format!("k={k}"));
    let mut partition = stiebitz_partition(&g, k)?;
    if ctx.fault {
        if let Some(part) = partition.parts.iter_mut().find(|p| !p.is_empty()) {
            let v = part.min().unwrap();
            part.remove(v);
        }
    }
    ensure(partition.parts.len() == k, "part count", || format!("{} parts", partition.parts.len()))?;
    let mut owner = vec![usize::MAX; g.n()];
    for (i, part) in partition.parts.iter().enumerate() {
        for v in part.iter() {
            ensure(owner[v] == usize::MAX, "disjointness", || format!("vertex {v} is in two parts"))?;
            owner[v] = i;
        }
    }
    ensure(owner.iter().all(|&o| o != usize::MAX), "cover", || "some vertex is in no part".into())?;
    for v in 0..g.n() {
        let inside = g.neighbors(v).iter().filter(|&&w| owner[w] == owner[v]).count();
        ensure(k * (inside + 1) >= g.degree(v), "degree", || {
            format!("vertex {v}: {inside} inside neighbours of {}", g.degree(v))
        })?;
    }
    Ok(true)
}

fn es(ctx: &mut Ctx) -> Trial {
    let k = ctx.rng.gen_range(2..=5);
    let l = ctx.rng.gen_range(2..=5);
    let len = (k - 1) * (l - 1) + 1;
    let mut pool: Vec<i64> = (-50..50).collect();
    pool.shuffle(&mut ctx.rng);
    let seq: Vec<i64> = pool[..len].to_vec();
    ctx.instance = format!("k={k} l={l} seq={seq:?}");
    let mut m = erdos_szekeres(&seq, k, l)?;
    if ctx.fault {
        m.indices.pop();
    }
    let want = match m.direction {
        Direction::Increasing => k,
        Direction::Decreasing => l,
    };
    ensure(m.indices.len() >= want, "length", || format!("{} entries, need {want}", m.indices.len()))?;
    ensure(m.indices.windows(2).all(|w| w[0] < w[1]) && m.indices.iter().all(|&i| i < len), "indices", || {
        format!("{:?}", m.indices)
    })?;
    let monotone = m.indices.windows(2).all(|w| match m.direction {
        Direction::Increasing => seq[w[0]] < seq[w[1]],
        Direction::Decreasing => seq[w[0]] > seq[w[1]],
    });
    ensure(monotone, "monotone", || format!("{:?}", m.indices))?;
    Ok(true)
}

fn path_tree(ctx: &mut Ctx) -> Trial {
    let t = ctx.ternary(60)?;
    let mut p = long_path(&t)?;
    if ctx.fault {
        p.pop();
    }
    let diameter = (0..t.n()).flat_map(|s| t.bfs_distances(s)).max().unwrap_or(0);
    ensure(!p.is_empty() && p.windows(2).all(|w| t.has_edge(w[0], w[1])), "path", || format!("{p:?}"))?;
    ensure(p.len() == diameter + 1, "longest", || format!("{} edges, diameter {diameter}", p.len().saturating_sub(1)))?;
    let x = (0..t.n()).filter(|&v| t.degree(v) <= 2).count();
    let bound = long_path_bound(x);
    ensure((p.len() - 1) as f64 >= bound - 1e-9, "length bound", || format!("{} < {bound}", p.len() - 1))?;
    let partition = path_partition(&t, &p)?;
    ensure(partition.parts.len() == p.len(), "part count", || "one part per path vertex".into())?;
    let total: usize = partition.parts.iter().map(|s| s.len()).sum();
    ensure(total == t.n(), "cover", || "parts do not cover the tree".into())?;
    for (i, part) in partition.parts.iter().enumerate() {
        let on_path = p.iter().filter(|&&v| part.contains(v)).count();
        ensure(on_path == 1 && part.contains(p[i]), "path vertices", || format!("part {i}"))?;
        ensure(part.iter().any(|v| t.degree(v) <= 2), "degree-two element", || format!("part {i}"))?;
        ensure(connected_within(&t, part), "connectivity", || format!("part {i}"))?;
    }
    Ok(true)
}

fn independent(ctx: &mut Ctx) -> Trial {
    let k = ctx.rng.gen_range(1..=2);
    let r = ctx.rng.gen_range(1..=3);
    let seed: u64 = ctx.rng.gen();
    ctx.instance = format!("planted multigraph k={k} r={r} seed={seed}");
    let (b, left): (MultiGraph, VertexSet) = planted_bipartite_multigraph(k, r, seed)?;
    let mut edges = disjoint_multiedges(&b, &left, k, r)?;
    if ctx.fault {
        edges.push(edges[0]);
    }
    ensure(edges.len() == k, "count", || format!("{} multiedges", edges.len()))?;
    let mut used = VertexSet::new(b.n());
    for &(u, v) in &edges {
        ensure(b.multiplicity(u, v) >= r, "multiplicity", || format!("{{{u}, {v}}}"))?;
        ensure(!used.contains(u) && !used.contains(v), "disjointness", || format!("{{{u}, {v}}}"))?;
        used.insert(u);
        used.insert(v);
    }
    Ok(true)
}

fn check_models(models: &[MinorModel], count: usize, pattern: &Graph) -> std::result::Result<(), Failure> {
    ensure(models.len() == count, "count", || format!("{} models, {count} expected", models.len()))?;
    for (i, m) in models.iter().enumerate() {
        ensure(*m.pattern == *pattern, "pattern", || format!("model {i} has the wrong pattern"))?;
        ensure_verdict(verify_model(m))?;
        ensure(models[..i].iter().all(|o| o.is_disjoint_from(m)), "disjointness", || format!("model {i}"))?;
    }
    Ok(())
}

fn corrupt(models: &mut [MinorModel]) {
    if let Some(m) = models.first_mut() {
        let n = m.host.n();
        m.branch_sets[0] = VertexSet::new(n);
    }
}

fn k2r(r: usize) -> Graph {
    generate(&Family::CompleteBipartite { p: 2, q: r }).expect("valid parameters")
}

fn big_degec(ctx: &mut Ctx) -> Trial {
    let g = if ctx.rng.gen_bool(0.5) {
        let n = ctx.rng.gen_range(5..=9);
        ctx.instance = format!("K_{n}");
        generate(&Family::Complete { n })?
    } else {
        ctx.gnp(6..=10, 0.5..0.95)?
    };
    let c = contraction_degeneracy(&g, ContractionMode::Exact, ctx.limits)?;
    let options: Vec<(usize, usize)> =
        (1..=c).flat_map(|k| (1..=c).map(move |r| (k, r))).filter(|&(k, r)| 2 * k * r <= c && (r > 1 || k == 1)).collect();
    let Some(&(k, r)) = options.choose(&mut ctx.rng) else { return Ok(false) };
    ctx.note(format!("dgnC={c} k={k} r={r}"));
    let mut models = extract_k2r_from_degeneracy(&g, k, r, ctx.limits)?;
    if ctx.fault {
        corrupt(&mut models);
    }
    check_models(&models, k, &k2r(r))?;
    Ok(true)
}

fn pw2_xi(ctx: &mut Ctx) -> Trial {
    let n = ctx.rng.gen_range(1..=9);
    let h = generate(&Family::RandomPw2 { n, seed: ctx.rng.gen() })?;
    ctx.instance = format!("pw2 graph6={}", text(&h));
    let mut model = check_pw2_minor_of_xi(&h, ctx.limits)?;
    if ctx.fault {
        corrupt(std::slice::from_mut(&mut model));
    }
    let xi = generate(&Family::Xi { r: n })?;
    ensure(*model.host == xi, "host", || format!("host is not Ξ_{n}"))?;
    check_models(std::slice::from_ref(&model), 1, &h)?;
    Ok(true)
}

fn twk2r(ctx: &mut Ctx) -> Trial {
    let g = ctx.gnp(1..=12, 0.1..0.5)?;
    let r = ctx.rng.gen_range(2..=3);
    ctx.note(format!("r={r}"));
    let mut found = find_minor_model(&g, &k2r(r), ctx.limits)?;
    if let Some(m) = &found {
        ensure_verdict(verify_model(m))?;
    }
    if ctx.fault {
        found = None;
    }
    if found.is_some() {
        return Ok(false);
    }
    let (tw, td) = treewidth_exact(&g, ctx.limits)?;
    ensure_verdict(verify_decomposition(&g, &td))?;
    // The sharper `tw ≤ 2r − 3` is false: K_3 has no K_{2,2} minor and treewidth 2.
    ensure(tw + 2 <= 2 * r, "treewidth", || format!("tw {tw} > 2r − 2 without a K_{{2,{r}}} minor"))?;
    Ok(true)
}

fn mesh_tiny(ctx: &mut Ctx) -> Trial {
    let g = ctx.gnp(1..=8, 0.2..0.9)?;
    let p = ctx.rng.gen_range(1..=3);
    let q = ctx.rng.gen_range(1..=p);
    ctx.note(format!("p={p} q={q}"));
    let (tw, _) = treewidth_exact(&g, ctx.limits)?;
    if tw + 1 < p + q {
        return Ok(false);
    }
    let mut w = find_mesh(&g, q, p, ctx.limits)?
        .ok_or_else(|| fail("existence", format!("tw {tw} ≥ p + q − 1 but no {q}-mesh of order {p}")))?;
    if ctx.fault {
        w.tree_edges.clear();
    }
    ensure_verdict(verify_mesh(&g, &w, ctx.limits)?)?;
    ensure(w.order == p && w.connectivity >= q, "parameters", || "mesh has the wrong order".into())?;
    Ok(true)
}

fn pattern(ctx: &mut Ctx, choices: &[&str]) -> Result<Graph, Failure> {
    let name = *choices.choose(&mut ctx.rng).unwrap();
    let h = match name {
        "K3" => generate(&Family::Complete { n: 3 })?,
        "P3" => generate(&Family::Path { n: 3 })?,
        "C4" => generate(&Family::Cycle { n: 4 })?,
        _ => k2r(3),
    };
    ctx.note(format!("h={name}"));
    Ok(h)
}

fn pack_sep(ctx: &mut Ctx) -> Trial {
    let g = ctx.gnp(4..=14, 0.15..0.5)?;
    let h = pattern(ctx, &["K3", "K23"])?;
    let (k, _) = pack_exact(&g, &h, ctx.limits)?;
    if k == 0 {
        return Ok(false);
    }
    let (w, td) = treewidth_exact(&g, ctx.limits)?;
    let ntd = make_nice(&g, &td)?;
    let mut sep = balanced_separation(&g, &h, &ntd, ctx.limits)?.separation;
    if ctx.fault {
        sep.b = sep.a.clone();
        sep.order = sep.a.len();
    }
    ensure_verdict(verify_separation(&g, &sep))?;
    let order = sep.a.intersection(&sep.b).len();
    ensure(order <= w + 1, "order", || format!("order {order} > w + 1 = {}", w + 1))?;
    let left = sep.a.difference(&sep.b);
    let crossing = left.iter().any(|u| g.neighbors(u).iter().any(|&v| sep.b.contains(v) && !sep.a.contains(v)));
    ensure(!crossing, "crossing edge", || "an edge joins A ∖ B to B ∖ A".into())?;
    let (inner, _) = g.induced_set(&left);
    let (p_left, _) = pack_exact(&inner, &h, ctx.limits)?;
    ensure(p_left <= 2 * k / 3, "balance", || format!("pack(G[A ∖ B]) = {p_left} > ⌊2·{k}/3⌋"))?;
    Ok(true)
}

fn has_model(g: &Graph, h: &Graph, limits: &Limits) -> Result<bool, Failure> {
    Ok(find_minor_model(g, h, limits)?.is_some())
}

fn sep_ep(ctx: &mut Ctx) -> Trial {
    let g = ctx.gnp(3..=11, 0.15..0.55)?;
    let h = pattern(ctx, &["K3", "C4", "K23"])?;
    let k = ctx.rng.gen_range(1..=3);
    ctx.note(format!("k={k}"));
    let (tw, _) = treewidth_exact(&g, ctx.limits)?;
    let mut hs = hitting_set_recursive(&g, &h, tw, ctx.limits)?;
    if ctx.fault {
        hs.vertices = VertexSet::new(g.n());
    }
    let (rest, _) = g.without(&hs.vertices);
    ensure(!has_model(&rest, &h, ctx.limits)?, "cover", || "a model survives the hitting set".into())?;
    let (pack, _) = pack_exact(&g, &h, ctx.limits)?;
    let (cover, _) = cover_exact(&g, &h, ctx.limits)?;
    let size = hs.vertices.len();
    ensure(size >= cover && cover >= pack, "optimum", || format!("|S| = {size}, cover {cover}, pack {pack}"))?;
    ensure(size <= hs.size_bound, "size bound", || format!("|S| = {size} > {}", hs.size_bound))?;
    let ww = epgap_winwin(&g, &h, k, ctx.limits)?;
    ensure(ww.certificate.is_packing() == (pack >= k), "branch", || format!("pack {pack}, k {k}"))?;
    ensure_verdict(verify_certificate(&g, &h, k, &ww.certificate, ctx.limits)?)?;
    Ok(true)
}

/// Smallest hitting set by trying vertex subsets in order of size.
fn brute_cover(g: &Graph, h: &Graph, limits: &Limits) -> Result<usize, Failure> {
    let n = g.n();
    for size in 0..=n {
        for mask in 0u64..1 << n {
            if mask.count_ones() as usize != size {
                continue;
            }
            let (rest, _) = g.without(&VertexSet::from_mask(n, mask));
            if !has_model(&rest, h, limits)? {
                return Ok(size);
            }
        }
    }
    Ok(n)
}

fn pack_le_cover(ctx: &mut Ctx) -> Trial {
    let g = ctx.gnp(2..=10, 0.1..0.6)?;
    let h = pattern(ctx, &["K3", "P3", "C4", "K23"])?;
    let (pack, models) = pack_exact(&g, &h, ctx.limits)?;
    let (mut cover, set) = cover_exact(&g, &h, ctx.limits)?;
    if ctx.fault {
        cover = pack.saturating_sub(1);
    }
    ensure(pack <= cover, "pack ≤ cover", || format!("pack {pack} > cover {cover}"))?;
    check_models(&models, pack, &h)?;
    ensure(set.len() == cover, "cover size", || format!("witness has {} vertices, value {cover}", set.len()))?;
    let (rest, _) = g.without(&set);
    ensure(!has_model(&rest, &h, ctx.limits)?, "cover", || "the cover witness misses a model".into())?;
    if g.n() <= 8 {
        let brute = brute_cover(&g, &h, ctx.limits)?;
        ensure(brute == cover, "brute force", || format!("brute-force cover {brute}, exact {cover}"))?;
    }
    Ok(true)
}

fn pipelines_th1(ctx: &mut Ctx) -> Trial {
    let k = ctx.rng.gen_range(1..=2);
    let r = ctx.rng.gen_range(1..=3);
    let size = (r - 1) * (r - 1) + 1 + ctx.rng.gen_range(0..=2);
    let seed: u64 = ctx.rng.gen();
    ctx.instance = format!("paired linkage k={k} set size={size} seed={seed}; r={r}");
    let (g, pl) = planted_paired_linkage(k, size, BundleOrder::Random, seed)?;
    let mut models = pairs_to_xi_models(&g, &pl, r, k)?;
    if ctx.fault {
        corrupt(&mut models);
    }
    check_models(&models, k, &generate(&Family::Xi { r })?)?;
    let (p, q) = (ctx.rng.gen_range(1..=2), ctx.rng.gen_range(1..=2));
    let seed: u64 = ctx.rng.gen();
    ctx.note(format!("mesh p={p} q={q} seed={seed}"));
    let (g, w) = planted_mesh(p, q, seed)?;
    let lw = mesh_to_linkage(&g, &w, p, q, ctx.limits)?;
    ensure_verdict(verify_linkage(&g, &lw))?;
    ensure(lw.terminal_sets.len() == 2 * q && lw.paths.len() == p * q, "linkage shape", || {
        format!("{} sets, {} paths", lw.terminal_sets.len(), lw.paths.len())
    })?;
    Ok(true)
}

fn pipelines_th2(ctx: &mut Ctx) -> Trial {
    let p = ctx.rng.gen_range(1..=2);
    let q = ctx.rng.gen_range(1..=3);
    let seed: u64 = ctx.rng.gen();
    ctx.instance = format!("linkage p={p} q={q} seed={seed}");
    let (g, lw) = planted_linkage(p, q, seed)?;
    let pl = linkage_to_pairs(&g, &lw, p, q)?;
    let mut models = pairs_to_k2r_models(&g, &pl, q, p)?;
    if ctx.fault {
        corrupt(&mut models);
    }
    check_models(&models, p, &k2r(q))?;
    let q = ctx.rng.gen_range(1..=4);
    let seed: u64 = ctx.rng.gen();
    ctx.note(format!("mesh p=1 q={q} seed={seed}"));
    let (g, w) = planted_mesh(1, q, seed)?;
    let lw = mesh_to_linkage(&g, &w, 1, q, ctx.limits)?;
    // 2q singleton sets: the pairing step needs 8 of them.
    if q == 4 {
        let pl = linkage_to_pairs(&g, &lw, 1, 1)?;
        let models = pairs_to_k2r_models(&g, &pl, 1, 1)?;
        check_models(&models, 1, &k2r(1))?;
    }
    Ok(true)
}
