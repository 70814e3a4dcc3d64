use serde::{Deserialize, Serialize};

/// Size guards for the exponential searches.
///
/// Every field can be overridden through an environment variable named
/// `EPGAP_LIMIT_<FIELD>` (upper case), e.g. `EPGAP_LIMIT_MINOR_HOST=30`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub contraction_degeneracy: usize,
    pub minor_pattern: usize,
    pub minor_host: usize,
    pub treewidth: usize,
    pub pathwidth: usize,
    pub mesh_order: usize,
    pub mesh_connectivity: usize,
    pub find_mesh_vertices: usize,
    pub find_mesh_order: usize,
    pub pack_host: usize,
    pub pack_host_triangle: usize,
    pub model_enumeration: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            contraction_degeneracy: 12,
            minor_pattern: 10,
            minor_host: 24,
            treewidth: 20,
            pathwidth: 16,
            mesh_order: 10,
            mesh_connectivity: 3,
            find_mesh_vertices: 12,
            find_mesh_order: 6,
            pack_host: 18,
            pack_host_triangle: 24,
            model_enumeration: 200_000,
        }
    }
}

impl Limits {
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        let fields: [(&str, &mut usize); 12] = [
            ("CONTRACTION_DEGENERACY", &mut limits.contraction_degeneracy),
            ("MINOR_PATTERN", &mut limits.minor_pattern),
            ("MINOR_HOST", &mut limits.minor_host),
            ("TREEWIDTH", &mut limits.treewidth),
            ("PATHWIDTH", &mut limits.pathwidth),
            ("MESH_ORDER", &mut limits.mesh_order),
            ("MESH_CONNECTIVITY", &mut limits.mesh_connectivity),
            ("FIND_MESH_VERTICES", &mut limits.find_mesh_vertices),
            ("FIND_MESH_ORDER", &mut limits.find_mesh_order),
            ("PACK_HOST", &mut limits.pack_host),
            ("PACK_HOST_TRIANGLE", &mut limits.pack_host_triangle),
            ("MODEL_ENUMERATION", &mut limits.model_enumeration),
        ];
        for (name, slot) in fields {
            if let Ok(value) = std::env::var(format!("EPGAP_LIMIT_{name}")) {
                match value.trim().parse::<usize>() {
                    Ok(v) => *slot = v,
                    Err(_) => log::warn!("ignoring EPGAP_LIMIT_{name}={value:?}: not an integer"),
                }
            }
        }
        limits
    }
}
