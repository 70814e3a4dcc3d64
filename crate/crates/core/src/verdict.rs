use serde::{Deserialize, Serialize};

/// Outcome of a certificate check: valid, or the first violated clause.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Short name of the violated clause, e.g. `"disjointness"`.
    pub clause: String,
    pub detail: String,
}

impl Verdict {
    pub fn ok() -> Self {
        Verdict {
            valid: true,
            violation: None,
        }
    }

    pub fn fail(clause: &str, detail: impl Into<String>) -> Self {
        Verdict {
            valid: false,
            violation: Some(Violation {
                clause: clause.to_string(),
                detail: detail.into(),
            }),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.valid
    }

    /// Name of the violated clause, if any.
    pub fn clause(&self) -> Option<&str> {
        self.violation.as_ref().map(|v| v.clause.as_str())
    }
}
