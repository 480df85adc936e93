use serde::Serialize;

/// One violated condition, with the data that witnesses it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<String>,
}

/// Outcome of a validation pass. Violations are data, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        ValidationReport {
            valid: true,
            violations: Vec::new(),
        }
    }

    pub fn push(&mut self, kind: &str, detail: impl Into<String>, witness: Vec<String>) {
        self.valid = false;
        self.violations.push(Violation {
            kind: kind.to_string(),
            detail: detail.into(),
            witness,
        });
    }

    pub fn has_kind(&self, kind: &str) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}
