//! Minor models: verification, search and enumeration of vertex-minimal models.

mod search;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::verdict::Verdict;

pub use search::{
    enumerate_minimal_models, find_minor_model, find_model_masks, minimal_model_masks, minimize_masks,
    ModelEnumeration,
};

/// Disjoint connected branch sets of `host`, one per vertex of `pattern`,
/// such that every pattern edge is realised by a host edge between the
/// corresponding sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorModel {
    pub host: Arc<Graph>,
    pub pattern: Arc<Graph>,
    /// `branch_sets[x]` is the branch set of pattern vertex `x`.
    pub branch_sets: Vec<VertexSet>,
}

#[derive(Serialize, Deserialize)]
struct ModelJson {
    pattern_hash: String,
    host_hash: String,
    branch_sets: BTreeMap<usize, Vec<usize>>,
}

impl MinorModel {
    pub fn new(host: Arc<Graph>, pattern: Arc<Graph>, branch_sets: Vec<VertexSet>) -> Self {
        MinorModel {
            host,
            pattern,
            branch_sets,
        }
    }

    pub(crate) fn from_masks(host: &Arc<Graph>, pattern: &Arc<Graph>, masks: &[u64]) -> Self {
        let n = host.n();
        MinorModel {
            host: Arc::clone(host),
            pattern: Arc::clone(pattern),
            branch_sets: masks.iter().map(|&m| VertexSet::from_mask(n, m)).collect(),
        }
    }

    /// All host vertices used by the model.
    pub fn support(&self) -> VertexSet {
        let mut out = VertexSet::new(self.host.n());
        for set in &self.branch_sets {
            out = out.union(set);
        }
        out
    }

    pub fn is_disjoint_from(&self, other: &MinorModel) -> bool {
        self.support().is_disjoint(&other.support())
    }

    /// Re-expresses the model in a supergraph through the map `local -> original`.
    pub fn lift(&self, host: &Arc<Graph>, vertex_map: &[usize]) -> MinorModel {
        let n = host.n();
        MinorModel {
            host: Arc::clone(host),
            pattern: Arc::clone(&self.pattern),
            branch_sets: self
                .branch_sets
                .iter()
                .map(|s| VertexSet::from_iter_with_capacity(n, s.iter().map(|v| vertex_map[v])))
                .collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let json = ModelJson {
            pattern_hash: self.pattern.hash_hex(),
            host_hash: self.host.hash_hex(),
            branch_sets: self.branch_sets.iter().enumerate().map(|(x, s)| (x, s.to_vec())).collect(),
        };
        serde_json::to_value(json).expect("model JSON is serialisable")
    }

    /// Reads a model written by [`MinorModel::to_json`], checking both graph hashes.
    pub fn from_json(value: &serde_json::Value, host: Arc<Graph>, pattern: Arc<Graph>) -> Result<MinorModel> {
        let json: ModelJson = serde_json::from_value(value.clone()).map_err(|e| Error::Parse {
            offset: 0,
            message: e.to_string(),
        })?;
        if json.host_hash != host.hash_hex() || json.pattern_hash != pattern.hash_hex() {
            return Err(Error::InvalidWitness("graph hashes do not match the model".into()));
        }
        if json.branch_sets.len() != pattern.n() || json.branch_sets.keys().enumerate().any(|(i, &k)| i != k) {
            return Err(Error::InvalidWitness("branch sets must be keyed 0..|V(pattern)|".into()));
        }
        let n = host.n();
        if json.branch_sets.values().flatten().any(|&v| v >= n) {
            return Err(Error::InvalidWitness("branch set vertex outside the host".into()));
        }
        let branch_sets = json
            .branch_sets
            .into_values()
            .map(|vs| VertexSet::from_iter_with_capacity(n, vs))
            .collect();
        Ok(MinorModel::new(host, pattern, branch_sets))
    }
}

impl Serialize for MinorModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Checks the three defining clauses of a minor model.
pub fn verify_model(m: &MinorModel) -> Verdict {
    let n = m.host.n();
    if m.branch_sets.len() != m.pattern.n() {
        return Verdict::fail(
            "bijection",
            format!("{} branch sets for {} pattern vertices", m.branch_sets.len(), m.pattern.n()),
        );
    }
    for (x, set) in m.branch_sets.iter().enumerate() {
        if set.is_empty() {
            return Verdict::fail("bijection", format!("branch set of {x} is empty"));
        }
        if let Some(v) = set.iter().find(|&v| v >= n) {
            return Verdict::fail("bijection", format!("branch set of {x} holds {v}, outside the host"));
        }
    }
    for (x, a) in m.branch_sets.iter().enumerate() {
        for (y, b) in m.branch_sets.iter().enumerate().skip(x + 1) {
            if !a.is_disjoint(b) {
                return Verdict::fail(
                    "disjointness",
                    format!("branch sets of {x} {a:?} and {y} {b:?} intersect"),
                );
            }
        }
    }
    for (x, set) in m.branch_sets.iter().enumerate() {
        if !m.host.induced(&set.to_vec()).is_connected() {
            return Verdict::fail("connectivity", format!("branch set of {x} {set:?} is not connected"));
        }
    }
    for (x, y) in m.pattern.edges() {
        let (a, b) = (&m.branch_sets[x], &m.branch_sets[y]);
        let joined = a.iter().any(|u| m.host.neighbors(u).iter().any(|&w| b.contains(w)));
        if !joined {
            return Verdict::fail("edge", format!("pattern edge {{{x}, {y}}} has no host edge between its branch sets"));
        }
    }
    Verdict::ok()
}

/// Composes a model of `inner` in `middle` with a model of `middle` in `host`.
pub fn compose_models(inner: &MinorModel, outer: &MinorModel) -> Result<MinorModel> {
    if inner.host != outer.pattern {
        return Err(Error::Precondition("inner host differs from outer pattern".into()));
    }
    let n = outer.host.n();
    let branch_sets = inner
        .branch_sets
        .iter()
        .map(|set| {
            set.iter()
                .fold(VertexSet::new(n), |acc, y| acc.union(&outer.branch_sets[y]))
        })
        .collect();
    Ok(MinorModel::new(Arc::clone(&outer.host), Arc::clone(&inner.pattern), branch_sets))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn k3_in_k4() -> MinorModel {
        let host = Arc::new(generate(&Family::Complete { n: 4 }).unwrap());
        let pattern = Arc::new(generate(&Family::Complete { n: 3 }).unwrap());
        MinorModel::from_masks(&host, &pattern, &[0b0001, 0b0010, 0b1100])
    }

    #[test]
    fn verify_reports_clauses() {
        let good = k3_in_k4();
        assert!(verify_model(&good).is_valid());
        let mut shared = good.clone();
        shared.branch_sets[0].insert(1);
        assert_eq!(verify_model(&shared).clause(), Some("disjointness"));

        let host = Arc::new(generate(&Family::Cycle { n: 6 }).unwrap());
        let pattern = Arc::new(generate(&Family::Complete { n: 3 }).unwrap());
        let ok = MinorModel::from_masks(&host, &pattern, &[0b000011, 0b001100, 0b110000]);
        assert!(verify_model(&ok).is_valid());
        let split = MinorModel::from_masks(&host, &pattern, &[0b000101, 0b001000, 0b110000]);
        assert_eq!(verify_model(&split).clause(), Some("connectivity"));
        let missing = MinorModel::from_masks(&host, &pattern, &[0b000001, 0b000010, 0b001000]);
        assert_eq!(verify_model(&missing).clause(), Some("edge"));
    }

    #[test]
    fn json_round_trip_checks_hashes() {
        let m = k3_in_k4();
        let value = m.to_json();
        assert_eq!(value["branch_sets"]["2"], serde_json::json!([2, 3]));
        let back = MinorModel::from_json(&value, Arc::clone(&m.host), Arc::clone(&m.pattern)).unwrap();
        assert_eq!(back, m);
        let other = Arc::new(generate(&Family::Complete { n: 5 }).unwrap());
        assert!(MinorModel::from_json(&value, other, Arc::clone(&m.pattern)).is_err());
    }
}
