use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Valid,
    Invalid,
    ResourceLimited,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    Schema,
    Axiom,
    Resource,
}

/// One failed instance of an axiom. `lhs` and `rhs` are the ids of the two
/// sides that were supposed to agree (or a short description when a side
/// does not exist).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub axiom: String,
    pub instance: String,
    pub lhs: String,
    pub rhs: String,
}

impl Violation {
    pub fn axiom(
        axiom: impl Into<String>,
        instance: impl Into<String>,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
    ) -> Self {
        Violation {
            kind: ViolationKind::Axiom,
            axiom: axiom.into(),
            instance: instance.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
        }
    }

    pub fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Violation {
            kind: ViolationKind::Schema,
            axiom: "schema".into(),
            instance: pointer.into(),
            lhs: message.into(),
            rhs: String::new(),
        }
    }

    pub fn resource(what: impl Into<String>, limit: usize) -> Self {
        Violation {
            kind: ViolationKind::Resource,
            axiom: "resource-limit".into(),
            instance: what.into(),
            lhs: format!("more than {limit} cells"),
            rhs: String::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub subject: String,
    pub status: Status,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    /// Builds a report; violations are sorted so that output is stable
    /// regardless of the order in which parallel workers found them.
    pub fn new(subject: impl Into<String>, mut violations: Vec<Violation>) -> Self {
        violations.sort();
        violations.dedup();
        let status = if violations.iter().any(|v| v.kind == ViolationKind::Resource) {
            Status::ResourceLimited
        } else if violations.is_empty() {
            Status::Valid
        } else {
            Status::Invalid
        };
        ValidationReport { subject: subject.into(), status, violations }
    }

    pub fn from_error(subject: impl Into<String>, err: &crate::Error) -> Self {
        let v = match err {
            crate::Error::ResourceLimit { what, limit } => Violation::resource(what.clone(), *limit),
            crate::Error::Schema { pointer, message } => Violation::schema(pointer.clone(), message.clone()),
            other => Violation::schema("/", other.to_string()),
        };
        ValidationReport::new(subject, vec![v])
    }

    pub fn is_valid(&self) -> bool {
        self.status == Status::Valid
    }

    pub fn has_axiom(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn has_schema_errors(&self) -> bool {
        self.violations.iter().any(|v| v.kind == ViolationKind::Schema)
    }

    pub fn merge(subject: impl Into<String>, parts: impl IntoIterator<Item = ValidationReport>) -> Self {
        let mut all = Vec::new();
        for p in parts {
            all.extend(p.violations);
        }
        ValidationReport::new(subject, all)
    }
}
