//! Acceptance criteria: one PASS/FAIL line per criterion, with its time limit.
//!
//! Exits non-zero when a criterion fails that is not listed in `KNOWN_FAILING`.

use std::sync::Arc;
use std::time::{Duration, Instant};

use epgap::epd::{
    balanced_separation, bound_th1, bound_th2, cover_exact, epgap_winwin, hitting_set_recursive, kostochka_threshold,
    pack_exact, verify_certificate,
};
use epgap::graph::{generate, Family};
use epgap::harness::{reports_json, run_verification_suite, SuiteConfig};
use epgap::io::write_graph6;
use epgap::minors::{find_minor_model, MinorModel};
use epgap::structure::planted::{planted_bipartite_multigraph, planted_paired_linkage, BundleOrder};
use epgap::structure::{
    check_pw2_minor_of_xi, disjoint_multiedges, erdos_szekeres, extract_k2r_from_degeneracy, low_degree_vertices,
    pairs_to_k2r_models, pairs_to_xi_models, stiebitz_partition, tree_cut, Direction,
};
use epgap::width::{make_nice, treewidth_exact, verify_decomposition};
use epgap::{Graph, Limits, VertexSet};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria whose literal statement is false; they run and report, but do not fail the target.
/// 2: K_3 has no K_{2,2} minor yet treewidth 2 > 2·2 − 3.
const KNOWN_FAILING: &[usize] = &[2];

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xacce_0000 + tag)
}

fn gnp(rng: &mut ChaCha8Rng, n: std::ops::RangeInclusive<usize>, p: std::ops::Range<f64>) -> Graph {
    let n = rng.gen_range(n);
    let p = rng.gen_range(p);
    generate(&Family::RandomGnp { n, p, seed: rng.gen() }).unwrap()
}

fn g6(g: &Graph) -> String {
    write_graph6(g).unwrap_or_default()
}

fn connected_in(g: &Graph, set: &VertexSet) -> bool {
    let Some(s) = set.min() else { return false };
    let mut seen = vec![s];
    let mut i = 0;
    while i < seen.len() {
        for &w in g.neighbors(seen[i]) {
            if set.contains(w) && !seen.contains(&w) {
                seen.push(w);
            }
        }
        i += 1;
    }
    seen.len() == set.len()
}

/// Model check written against the definition, independent of the library verifier.
fn model_ok(m: &MinorModel) -> bool {
    let (g, h) = (&m.host, &m.pattern);
    if m.branch_sets.len() != h.n() {
        return false;
    }
    for (i, s) in m.branch_sets.iter().enumerate() {
        if !connected_in(g, s) || m.branch_sets[..i].iter().any(|t| !t.is_disjoint(s)) {
            return false;
        }
    }
    h.edges().all(|(x, y)| {
        m.branch_sets[x]
            .iter()
            .any(|u| g.neighbors(u).iter().any(|&w| m.branch_sets[y].contains(w)))
    })
}

fn disjoint_models_ok(models: &[MinorModel], count: usize, pattern: &Graph) -> Result<(), String> {
    ensure(models.len() == count, || format!("{} models, {count} expected", models.len()))?;
    for (i, m) in models.iter().enumerate() {
        ensure(*m.pattern == *pattern && model_ok(m), || format!("model {i} is not a model"))?;
        ensure(models[..i].iter().all(|o| o.support().is_disjoint(&m.support())), || format!("model {i} overlaps"))?;
    }
    Ok(())
}

/// Minor test by enumerating every map from host vertices to pattern vertices or nothing.
fn brute_minor(g: &Graph, h: &Graph) -> bool {
    let (n, k) = (g.n(), h.n());
    let mut assign = vec![0usize; n];
    loop {
        let sets: Vec<VertexSet> = (1..=k)
            .map(|c| VertexSet::from_iter_with_capacity(n, (0..n).filter(|&v| assign[v] == c)))
            .collect();
        let ok = sets.iter().all(|s| connected_in(g, s))
            && h.edges().all(|(x, y)| sets[x].iter().any(|u| g.neighbors(u).iter().any(|&w| sets[y].contains(w))));
        if ok {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            assign[i] += 1;
            if assign[i] <= k {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

fn brute_pack(g: &Graph, h: &Graph) -> usize {
    let n = g.n();
    let mut best = 0;
    for t in 1..=n / h.n().max(1) {
        let mut found = false;
        let total = (t + 1).pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let mut class = vec![0usize; n];
            for slot in class.iter_mut() {
                *slot = c % (t + 1);
                c /= t + 1;
            }
            let all = (1..=t).all(|j| {
                let vs: Vec<usize> = (0..n).filter(|&v| class[v] == j).collect();
                vs.len() >= h.n() && brute_minor(&g.induced(&vs), h)
            });
            if all {
                found = true;
                break;
            }
        }
        if !found {
            break;
        }
        best = t;
    }
    best
}

fn brute_cover(g: &Graph, h: &Graph) -> usize {
    let n = g.n();
    (0..=n)
        .find(|&size| {
            (0u64..1 << n)
                .filter(|m| m.count_ones() as usize == size)
                .any(|m| !brute_minor(&g.without(&VertexSet::from_mask(n, m)).0, h))
        })
        .unwrap_or(n)
}

/// Treewidth by the subset recurrence over elimination orderings.
fn brute_treewidth(g: &Graph) -> usize {
    let n = g.n();
    let adj: Vec<u64> = (0..n).map(|v| g.neighbors(v).iter().fold(0u64, |a, &w| a | 1 << w)).collect();
    // q(s, v): vertices outside s ∪ {v} reachable from v through s.
    let q = |s: u64, v: usize| -> u32 {
        let mut reach = 0u64;
        let mut frontier = adj[v];
        let mut inside = 1u64 << v;
        while frontier != 0 {
            let w = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            if s >> w & 1 == 1 {
                if inside >> w & 1 == 0 {
                    inside |= 1 << w;
                    frontier |= adj[w] & !inside;
                }
            } else {
                reach |= 1 << w;
            }
        }
        (reach & !(1u64 << v)).count_ones()
    };
    let full = (1u64 << n) - 1;
    let mut tw = vec![u32::MAX; 1 << n];
    tw[0] = 0;
    for s in 1..=full {
        let mut best = u32::MAX;
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = s & !(1 << v);
            best = best.min(tw[rest as usize].max(q(rest, v)));
        }
        tw[s as usize] = best;
    }
    tw[full as usize] as usize
}

fn c1_formulas() -> Check {
    let th2 = |k: u64, r: u64| 20 * k * k * r * r - 8 * k * k * r + 2 * r - 1;
    for (k, r, want) in [(1, 2, 67u64), (2, 2, 259)] {
        let got = bound_th2(k, r).map_err(|e| e.to_string())?;
        ensure(got == BigUint::from(want) && th2(k, r) == want, || format!("bound_th2({k},{r}) = {got}"))?;
    }
    let th1 = bound_th1(1, 6).map_err(|e| e.to_string())?;
    // r(r−2) = 24 is even: 3·2¹²·(2·6⁴·log₂2 + 9·6²·...) is an integer; pinned value.
    ensure(th1.ceiling == BigUint::from(3_019_825_151u64), || format!("bound_th1(1,6) = {}", th1.ceiling))?;
    let kost = kostochka_threshold(2).map_err(|e| e.to_string())?;
    ensure(kost == 1296.0, || format!("kostochka_threshold(2) = {kost}"))?;
    Ok("67, 259, 3019825151, 1296 exact".into())
}

fn c2_twk2r() -> Check {
    let limits = Limits::default();
    let mut r0 = rng(2);
    let mut free = 0;
    let mut violations = Vec::new();
    for _ in 0..500 {
        let g = gnp(&mut r0, 1..=12, 0.1..0.5);
        let r = r0.gen_range(2..=3);
        let h = generate(&Family::CompleteBipartite { p: 2, q: r }).unwrap();
        if find_minor_model(&g, &h, &limits).map_err(|e| e.to_string())?.is_some() {
            continue;
        }
        free += 1;
        let (tw, td) = treewidth_exact(&g, &limits).map_err(|e| e.to_string())?;
        ensure(verify_decomposition(&g, &td).is_valid(), || "invalid decomposition".into())?;
        if tw + 3 > 2 * r {
            violations.push(format!("r={r} tw={tw} graph6={}", g6(&g)));
        }
    }
    ensure(violations.is_empty(), || {
        format!("{} of {free} K_{{2,r}}-free graphs exceed 2r−3, e.g. {}", violations.len(), violations[0])
    })?;
    Ok(format!("{free} K_{{2,r}}-free graphs, 0 violations"))
}

fn c3_partition() -> Check {
    let mut r0 = rng(3);
    for trial in 0..1000 {
        let g = gnp(&mut r0, 1..=40, 0.05..0.7);
        let k = r0.gen_range(2..=4);
        let part = stiebitz_partition(&g, k).map_err(|e| e.to_string())?;
        let mut owner = vec![usize::MAX; g.n()];
        for (i, p) in part.parts.iter().enumerate() {
            for v in p.iter() {
                ensure(owner[v] == usize::MAX, || format!("trial {trial}: vertex {v} twice"))?;
                owner[v] = i;
            }
        }
        for v in 0..g.n() {
            let inside = g.neighbors(v).iter().filter(|&&w| owner[w] == owner[v]).count();
            ensure(owner[v] < k && (inside as f64) >= g.degree(v) as f64 / k as f64 - 1.0, || {
                format!("trial {trial}: vertex {v} has {inside} of {} neighbours inside", g.degree(v))
            })?;
        }
    }
    Ok("1000 graphs, 0 violations".into())
}

fn c4_tree_cut() -> Check {
    let mut r0 = rng(4);
    for trial in 0..500 {
        let n = r0.gen_range(1..=60);
        let t = generate(&Family::RandomTernaryTree { n, seed: r0.gen() }).unwrap();
        let x = if trial % 2 == 0 {
            VertexSet::from_iter_with_capacity(n, (0..n).filter(|&v| t.degree(v) <= 2))
        } else {
            VertexSet::from_iter_with_capacity(n, (0..n).filter(|_| r0.gen_bool(0.6)))
        };
        let k = r0.gen_range(2..=3);
        let cuts = tree_cut(&t, &x, k).map_err(|e| e.to_string())?;
        let need = (x.len() / (2 * k - 1)) as i64 - 1;
        ensure(cuts.len() as i64 >= need, || format!("trial {trial}: {} < {need} subtrees", cuts.len()))?;
        for (i, c) in cuts.iter().enumerate() {
            ensure(cuts[..i].iter().all(|d| d.is_disjoint(c)), || format!("trial {trial}: overlap"))?;
            ensure(connected_in(&t, c), || format!("trial {trial}: subtree {i} disconnected"))?;
            ensure(c.intersection(&x).len() >= k, || format!("trial {trial}: subtree {i} has few markers"))?;
        }
    }
    Ok("500 trees, 0 violations".into())
}

fn c5_es() -> Check {
    let mut r0 = rng(5);
    for trial in 0..1000 {
        let (k, l) = (r0.gen_range(2..=5), r0.gen_range(2..=5));
        let len = (k - 1) * (l - 1) + 1;
        let mut pool: Vec<i64> = (0..200).collect();
        pool.shuffle(&mut r0);
        let seq = &pool[..len];
        let m = erdos_szekeres(seq, k, l).map_err(|e| e.to_string())?;
        let (want, up) = match m.direction {
            Direction::Increasing => (k, true),
            Direction::Decreasing => (l, false),
        };
        let ok = m.indices.len() >= want
            && m.indices.windows(2).all(|w| w[0] < w[1] && (seq[w[0]] < seq[w[1]]) == up);
        ensure(ok, || format!("trial {trial}: {seq:?} gave {:?}", m.indices))?;
    }
    Ok("1000 sequences, 0 violations".into())
}

fn c6_smalldeg() -> Check {
    let mut r0 = rng(6);
    let mut checked = 0;
    for trial in 0..1000 {
        let g = gnp(&mut r0, 2..=40, 0.05..0.6);
        let a = r0.gen_range(1..=3);
        if g.m() == 0 {
            continue;
        }
        checked += 1;
        let low = low_degree_vertices(&g, a).map_err(|e| e.to_string())?;
        ensure(a * low.len() > (a - 1) * g.n(), || format!("trial {trial}: {} of {} with a = {a}", low.len(), g.n()))?;
    }
    Ok(format!("{checked} graphs with edges, 0 violations"))
}

fn c7_independent() -> Check {
    let mut r0 = rng(7);
    for trial in 0..200 {
        let (k, r) = (r0.gen_range(1..=2), r0.gen_range(1..=3));
        let (b, left) = planted_bipartite_multigraph(k, r, r0.gen()).map_err(|e| e.to_string())?;
        let edges = disjoint_multiedges(&b, &left, k, r).map_err(|e| format!("trial {trial}: {e}"))?;
        let mut ends: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        ends.sort_unstable();
        ends.dedup();
        ensure(edges.len() == k && ends.len() == 2 * k, || format!("trial {trial}: not {k} disjoint multiedges"))?;
        ensure(edges.iter().all(|&(u, v)| b.multiplicity(u, v) >= r), || format!("trial {trial}: light multiedge"))?;
    }
    Ok("200 planted multigraphs, 0 violations".into())
}

fn c8_big_degec() -> Check {
    let limits = Limits::default();
    for (n, k, r) in [(5, 1, 2), (9, 2, 2)] {
        let g = generate(&Family::Complete { n }).unwrap();
        let models = extract_k2r_from_degeneracy(&g, k, r, &limits).map_err(|e| e.to_string())?;
        let h = generate(&Family::CompleteBipartite { p: 2, q: r }).unwrap();
        disjoint_models_ok(&models, k, &h).map_err(|e| format!("K_{n}: {e}"))?;
    }
    Ok("K_5 and K_9 give verified disjoint K_{2,2} models".into())
}

fn c9_pw2() -> Check {
    let limits = Limits::default();
    let mut r0 = rng(9);
    for trial in 0..200 {
        let n = r0.gen_range(1..=9);
        let h = generate(&Family::RandomPw2 { n, seed: r0.gen() }).unwrap();
        let m = check_pw2_minor_of_xi(&h, &limits).map_err(|e| format!("trial {trial}: {e}"))?;
        let xi = generate(&Family::Xi { r: n }).unwrap();
        ensure(*m.host == xi && *m.pattern == h && model_ok(&m), || format!("trial {trial}: bad model"))?;
    }
    Ok("200 pathwidth-2 graphs embedded in Ξ_n".into())
}

fn c10_pack_sep() -> Check {
    let limits = Limits::default();
    let mut r0 = rng(10);
    let patterns = [generate(&Family::Complete { n: 3 }).unwrap(), generate(&Family::CompleteBipartite { p: 2, q: 3 }).unwrap()];
    let mut done = 0;
    while done < 100 {
        let h = &patterns[done % 2];
        let g = gnp(&mut r0, 5..=14, 0.2..0.5);
        let (k, _) = pack_exact(&g, h, &limits).map_err(|e| e.to_string())?;
        if k == 0 {
            continue;
        }
        done += 1;
        let (w, td) = treewidth_exact(&g, &limits).map_err(|e| e.to_string())?;
        let ntd = make_nice(&g, &td).map_err(|e| e.to_string())?;
        let bs = balanced_separation(&g, h, &ntd, &limits).map_err(|e| format!("{}: {e}", g6(&g)))?;
        let heavy = |x: usize| 3 * x > 2 * k;
        let splits: Vec<usize> = (0..ntd.kinds.len())
            .filter(|&t| heavy(bs.node_pack[t]) && ntd.kinds[t].children().iter().all(|&c| !heavy(bs.node_pack[c])))
            .collect();
        ensure(bs.node_pack[ntd.root] == k && splits.len() == 1 && bs.split_node == Some(splits[0]), || {
            format!("split nodes {splits:?}, reported {:?}", bs.split_node)
        })?;
        let sep = &bs.separation;
        let sep_set = sep.a.intersection(&sep.b);
        ensure(sep.a.union(&sep.b).len() == g.n(), || "A ∪ B misses vertices".into())?;
        ensure(sep_set.len() <= w + 1, || format!("order {} > w + 1 = {}", sep_set.len(), w + 1))?;
        let (left, right) = (sep.a.difference(&sep.b), sep.b.difference(&sep.a));
        ensure(g.edges().all(|(u, v)| !(left.contains(u) && right.contains(v) || left.contains(v) && right.contains(u))), || {
            format!("crossing edge in {}", g6(&g))
        })?;
        let (inner, _) = g.induced_set(&left);
        let (p, _) = pack_exact(&inner, h, &limits).map_err(|e| e.to_string())?;
        ensure(p <= 2 * k / 3, || format!("pack(G[A ∖ B]) = {p} > ⌊2·{k}/3⌋ in {}", g6(&g)))?;
    }
    Ok("100 separations, all three clauses hold".into())
}

fn c11_winwin() -> Check {
    let limits = Limits::default();
    let mut r0 = rng(11);
    let patterns = [
        generate(&Family::Complete { n: 3 }).unwrap(),
        generate(&Family::Cycle { n: 4 }).unwrap(),
        generate(&Family::CompleteBipartite { p: 2, q: 3 }).unwrap(),
        generate(&Family::Path { n: 3 }).unwrap(),
    ];
    let (mut packings, mut covers) = (0, 0);
    for trial in 0..200 {
        let h = &patterns[trial % patterns.len()];
        let g = gnp(&mut r0, 3..=11, 0.15..0.55);
        let k = r0.gen_range(1..=3);
        let ww = epgap_winwin(&g, h, k, &limits).map_err(|e| e.to_string())?;
        let verdict = verify_certificate(&g, h, k, &ww.certificate, &limits).map_err(|e| e.to_string())?;
        ensure(verdict.is_valid(), || format!("trial {trial}: certificate fails {:?}", verdict.clause()))?;
        let (pack, _) = pack_exact(&g, h, &limits).map_err(|e| e.to_string())?;
        let (cover, _) = cover_exact(&g, h, &limits).map_err(|e| e.to_string())?;
        ensure(pack <= cover, || format!("trial {trial}: pack {pack} > cover {cover}"))?;
        if ww.certificate.is_packing() {
            packings += 1;
        } else {
            covers += 1;
        }
        let (tw, _) = treewidth_exact(&g, &limits).map_err(|e| e.to_string())?;
        let hs = hitting_set_recursive(&g, h, tw, &limits).map_err(|e| e.to_string())?;
        let (rest, _) = g.without(&hs.vertices);
        let survives = find_minor_model(&rest, h, &limits).map_err(|e| e.to_string())?.is_some();
        ensure(!survives && hs.vertices.len() >= cover, || {
            format!("trial {trial}: recursion gave {} vertices, optimum {cover}", hs.vertices.len())
        })?;
    }
    Ok(format!("200 certificates verified ({packings} packings, {covers} covers)"))
}

fn c12_pipelines() -> Check {
    let mut r0 = rng(12);
    for trial in 0..100 {
        let k = r0.gen_range(1..=2);
        let r = r0.gen_range(1..=3);
        let size = (r - 1) * (r - 1) + 1;
        let order = [BundleOrder::Identity, BundleOrder::Reversed, BundleOrder::Random][trial % 3];
        let (g, pl) = planted_paired_linkage(k, size.max(r), order, r0.gen()).map_err(|e| e.to_string())?;
        let xi = pairs_to_xi_models(&g, &pl, r, k).map_err(|e| format!("trial {trial}: {e}"))?;
        disjoint_models_ok(&xi, k, &generate(&Family::Xi { r }).unwrap()).map_err(|e| format!("trial {trial}: {e}"))?;
        let k2r = pairs_to_k2r_models(&g, &pl, r, k).map_err(|e| format!("trial {trial}: {e}"))?;
        let h = generate(&Family::CompleteBipartite { p: 2, q: r }).unwrap();
        disjoint_models_ok(&k2r, k, &h).map_err(|e| format!("trial {trial}: {e}"))?;
    }
    Ok("100/100 planted linkages give verified Ξ_r and K_{2,r} models".into())
}

fn c13_oracles() -> Check {
    let limits = Limits::default();
    let k3 = generate(&Family::Complete { n: 3 }).unwrap();
    let k23 = generate(&Family::CompleteBipartite { p: 2, q: 3 }).unwrap();
    let k6 = generate(&Family::Complete { n: 6 }).unwrap();
    let k5 = generate(&Family::Complete { n: 5 }).unwrap();
    let pack = pack_exact(&k6, &k3, &limits).map_err(|e| e.to_string())?.0;
    ensure(pack == 2 && brute_pack(&k6, &k3) == 2, || format!("pack_K3(K6) = {pack}"))?;
    let cover = cover_exact(&k5, &k3, &limits).map_err(|e| e.to_string())?.0;
    ensure(cover == 3 && brute_cover(&k5, &k3) == 3, || format!("cover_K3(K5) = {cover}"))?;
    let cover = cover_exact(&k23, &k23, &limits).map_err(|e| e.to_string())?.0;
    ensure(cover == 1 && brute_cover(&k23, &k23) == 1, || format!("cover_K23(K23) = {cover}"))?;
    for r in 1..=6 {
        let xi = Arc::new(generate(&Family::Xi { r }).unwrap());
        let (tw, _) = treewidth_exact(&xi, &limits).map_err(|e| e.to_string())?;
        let brute = brute_treewidth(&xi);
        let want = if r == 1 { 1 } else { 2 };
        ensure(tw == want && brute == want, || format!("tw(Ξ_{r}) = {tw}, brute force {brute}"))?;
    }
    Ok("pack_K3(K6)=2, cover_K3(K5)=3, cover_K23(K23)=1, tw(Ξ_r)=2 for 2≤r≤6 (tw(Ξ_1)=1)".into())
}

fn c14_determinism() -> Check {
    let config = |threads: Option<usize>| {
        let mut c = SuiteConfig::new(42, 100);
        c.threads = threads;
        c
    };
    let a = reports_json(&run_verification_suite(&config(None)).map_err(|e| e.to_string())?, false);
    let b = reports_json(&run_verification_suite(&config(None)).map_err(|e| e.to_string())?, false);
    let c = reports_json(&run_verification_suite(&config(Some(3))).map_err(|e| e.to_string())?, false);
    ensure(a == b, || "two runs differ".into())?;
    ensure(a == c, || "thread count changes the reports".into())?;
    Ok(format!("15 reports, {} bytes, identical across runs and thread counts", a.len()))
}

fn main() {
    type Criterion = (usize, &'static str, u64, fn() -> Check);
    let criteria: [Criterion; 14] = [
        (1, "formula fidelity", 1, c1_formulas),
        (2, "K_{2,r}-free treewidth ≤ 2r−3", 300, c2_twk2r),
        (3, "degree-preserving partition", 120, c3_partition),
        (4, "tree cutting", 60, c4_tree_cut),
        (5, "monotone subsequences", 30, c5_es),
        (6, "low-degree vertices", 60, c6_smalldeg),
        (7, "disjoint heavy multiedges", 60, c7_independent),
        (8, "K_{2,r} models from contraction degeneracy", 60, c8_big_degec),
        (9, "pathwidth-2 graphs in Ξ_n", 600, c9_pw2),
        (10, "balanced separations", 600, c10_pack_sep),
        (11, "win/win soundness", 900, c11_winwin),
        (12, "pipeline extraction", 300, c12_pipelines),
        (13, "exact oracle cross-checks", 120, c13_oracles),
        (14, "determinism", 600, c14_determinism),
    ];
    let mut unexpected = Vec::new();
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let limit = Duration::from_secs(limit);
        let (ok, detail) = match result {
            Ok(d) if took <= limit => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(e) => (false, e),
        };
        let known = KNOWN_FAILING.contains(&id);
        println!(
            "{} [{id:>2}] {name} ({:.2}s, limit {}s): {detail}{}",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            limit.as_secs(),
            if !ok && known { " (known false statement)" } else { "" }
        );
        if !ok && !known {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
