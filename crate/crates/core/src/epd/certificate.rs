use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::bounds::{bound_th1, bound_th2};
use super::hitting::hitting_set_recursive;
use super::pack_cover::pack_exact;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::limits::Limits;
use crate::minors::{find_minor_model, verify_model, MinorModel};
use crate::verdict::Verdict;
use crate::width::{pathwidth_exact, treewidth_exact};

/// Either `k` pairwise disjoint models or a hitting set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    Packing { models: Vec<MinorModel> },
    Cover { vertices: VertexSet },
}

impl Certificate {
    pub fn is_packing(&self) -> bool {
        matches!(self, Certificate::Packing { .. })
    }

    /// Reads a certificate written by serde, resolving models against `host` and `pattern`.
    pub fn from_json(value: &serde_json::Value, host: &Arc<Graph>, pattern: &Arc<Graph>) -> Result<Certificate> {
        let bad = |m: &str| Error::Parse {
            offset: 0,
            message: m.to_string(),
        };
        match value.get("type").and_then(|t| t.as_str()) {
            Some("packing") => {
                let models = value
                    .get("models")
                    .and_then(|m| m.as_array())
                    .ok_or_else(|| bad("packing certificate without models"))?
                    .iter()
                    .map(|m| MinorModel::from_json(m, Arc::clone(host), Arc::clone(pattern)))
                    .collect::<Result<_>>()?;
                Ok(Certificate::Packing { models })
            }
            Some("cover") => {
                let vertices: Vec<usize> = serde_json::from_value(
                    value.get("vertices").cloned().ok_or_else(|| bad("cover certificate without vertices"))?,
                )
                .map_err(|e| bad(&e.to_string()))?;
                if vertices.iter().any(|&v| v >= host.n()) {
                    return Err(Error::InvalidWitness("cover vertex outside the host".into()));
                }
                Ok(Certificate::Cover {
                    vertices: VertexSet::from_iter_with_capacity(host.n(), vertices),
                })
            }
            _ => Err(bad("certificate type must be packing or cover")),
        }
    }
}

/// Which treewidth bound applies to the pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    /// `"th1"` for pathwidth-two patterns, `"th2"` for `K_{2,r}`.
    pub theorem: String,
    pub k: u64,
    pub r: u64,
    /// Decimal value, rounded up when irrational.
    pub value: String,
    pub symbolic: Option<String>,
}

/// How the host's treewidth compares with the bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwCase {
    /// Treewidth reaches the bound, so a packing is guaranteed.
    AtLeastBound,
    BelowBound,
    /// No bound is known for the pattern.
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WinWin {
    #[serde(flatten)]
    pub certificate: Certificate,
    pub host_hash: String,
    pub pattern_hash: String,
    pub k: usize,
    pub treewidth: usize,
    pub pack: usize,
    pub bound: Option<BoundReport>,
    pub tw_case: TwCase,
    /// `(2k − 1)(w + 1)` bound of the recursion, when the cover branch ran.
    pub cover_size_bound: Option<usize>,
}

/// `Some(r)` when `h` is `K_{2,r}`.
pub fn k2r_order(h: &Graph) -> Option<usize> {
    let n = h.n();
    if n < 3 || h.m() != 2 * (n - 2) {
        return None;
    }
    let hubs: Vec<usize> = (0..n).filter(|&v| h.degree(v) == n - 2).collect();
    let candidates: Vec<(usize, usize)> = if n == 4 {
        // C_4: every vertex has degree two
        vec![(0, h.neighbors(0)[0])]
            .into_iter()
            .flat_map(|(a, _)| (1..n).filter(move |&b| !h.has_edge(a, b)).map(move |b| (a, b)))
            .collect()
    } else {
        hubs.iter()
            .flat_map(|&a| hubs.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
            .collect()
    };
    candidates.into_iter().find_map(|(a, b)| {
        let ok = !h.has_edge(a, b)
            && (0..n)
                .filter(|&v| v != a && v != b)
                .all(|v| h.degree(v) == 2 && h.has_edge(v, a) && h.has_edge(v, b));
        ok.then_some(n - 2)
    })
}

/// Treewidth bound guaranteeing `k` disjoint models of `h`, when one is known.
///
/// `K_{2,r}` uses the quadratic bound; other patterns of pathwidth at most two
/// on `r` vertices use the exponential one with `r` raised to 6, since such a
/// pattern is a minor of the ladder-like graph on `3·max(r, 6)` vertices.
pub fn pattern_bound(h: &Graph, k: usize, limits: &Limits) -> Result<Option<BoundReport>> {
    if k == 0 {
        return Err(Error::Parameter("k must be at least 1".into()));
    }
    if let Some(r) = k2r_order(h) {
        let value = bound_th2(k as u64, r as u64)?;
        return Ok(Some(BoundReport {
            theorem: "th2".into(),
            k: k as u64,
            r: r as u64,
            value: value.to_string(),
            symbolic: None,
        }));
    }
    if h.n() > limits.pathwidth {
        return Ok(None);
    }
    let (pw, _) = pathwidth_exact(h, limits)?;
    if pw > 2 {
        return Ok(None);
    }
    let r = h.n().max(6) as u64;
    let b = bound_th1(k as u64, r)?;
    Ok(Some(BoundReport {
        theorem: "th1".into(),
        k: k as u64,
        r,
        value: b.ceiling.to_string(),
        symbolic: Some(b.symbolic()),
    }))
}

/// Returns `k` disjoint models of `h` in `g` when they exist, otherwise a
/// hitting set from the recursive separation algorithm.
pub fn epgap_winwin(g: &Graph, h: &Graph, k: usize, limits: &Limits) -> Result<WinWin> {
    if k == 0 {
        return Err(Error::Parameter("k must be at least 1".into()));
    }
    if h.n() == 0 || !h.is_connected() {
        return Err(Error::Precondition("the pattern must be connected".into()));
    }
    let bound = pattern_bound(h, k, limits)?;
    let (treewidth, _) = treewidth_exact(g, limits)?;
    let tw_case = match &bound {
        None => TwCase::Unbounded,
        Some(b) => {
            let v: BigUint = b.value.parse().expect("bound is a decimal integer");
            if BigUint::from(treewidth) >= v {
                TwCase::AtLeastBound
            } else {
                TwCase::BelowBound
            }
        }
    };
    let (pack, models) = pack_exact(g, h, limits)?;
    log::info!("treewidth {treewidth}, pack {pack}, target {k}, case {tw_case:?}");
    let (certificate, cover_size_bound) = if pack >= k {
        (
            Certificate::Packing {
                models: models.into_iter().take(k).collect(),
            },
            None,
        )
    } else {
        if tw_case == TwCase::AtLeastBound {
            return Err(Error::Invariant(format!(
                "treewidth {treewidth} reaches the bound but only {pack} disjoint models exist"
            )));
        }
        let budget = match &bound {
            Some(b) => b.value.parse::<BigUint>().ok().and_then(|v| v.to_usize()).unwrap_or(usize::MAX).saturating_sub(1),
            None => treewidth,
        };
        let hs = hitting_set_recursive(g, h, treewidth.min(budget), limits)?;
        (Certificate::Cover { vertices: hs.vertices }, Some(hs.size_bound))
    };
    Ok(WinWin {
        certificate,
        host_hash: g.hash_hex(),
        pattern_hash: h.hash_hex(),
        k,
        treewidth,
        pack,
        bound,
        tw_case,
        cover_size_bound,
    })
}

/// Checks a certificate independently: packings model by model, covers by minor search.
pub fn verify_certificate(g: &Graph, h: &Graph, k: usize, cert: &Certificate, limits: &Limits) -> Result<Verdict> {
    match cert {
        Certificate::Packing { models } => {
            if models.len() < k {
                return Ok(Verdict::fail("model count", format!("{} models, {k} required", models.len())));
            }
            for (i, m) in models.iter().enumerate() {
                if m.host.as_ref() != g || m.pattern.as_ref() != h {
                    return Ok(Verdict::fail("graphs", format!("model {i} refers to other graphs")));
                }
                let v = verify_model(m);
                if !v.is_valid() {
                    return Ok(Verdict::fail("model", format!("model {i}: {:?}", v.violation)));
                }
            }
            for i in 0..models.len() {
                for j in i + 1..models.len() {
                    if !models[i].is_disjoint_from(&models[j]) {
                        return Ok(Verdict::fail("disjointness", format!("models {i} and {j} intersect")));
                    }
                }
            }
            Ok(Verdict::ok())
        }
        Certificate::Cover { vertices } => {
            if vertices.iter().any(|v| v >= g.n()) {
                return Ok(Verdict::fail("cover range", "vertex outside the host"));
            }
            let (rest, map) = g.without(vertices);
            match find_minor_model(&rest, h, limits)? {
                None => Ok(Verdict::ok()),
                Some(m) => {
                    let lifted = m.lift(&Arc::new(g.clone()), &map);
                    Ok(Verdict::fail("cover", format!("model survives: {:?}", lifted.branch_sets)))
                }
            }
        }
    }
}
