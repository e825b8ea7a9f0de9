//! Deterministic run reports.

use std::collections::BTreeMap;
use std::fmt::Debug;

use serde::Serialize;
use serde_json::Value;

use super::doc::write_value;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DocRef {
    pub name: String,
    pub kind: String,
    pub digest: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateSummary {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_counterexample: Option<String>,
}

impl CertificateSummary {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    /// A single yes/no check.
    pub fn single(name: &str, holds: bool, counterexample: impl FnOnce() -> String) -> CertificateSummary {
        CertificateSummary {
            name: name.into(),
            passed: usize::from(holds),
            failed: usize::from(!holds),
            first_counterexample: (!holds).then(counterexample),
        }
    }

    /// `total` identities checked, `violations` the failing ones.
    pub fn from_violations<V: Debug>(name: &str, total: usize, violations: &[V]) -> CertificateSummary {
        CertificateSummary {
            name: name.into(),
            passed: total.saturating_sub(violations.len()),
            failed: violations.len(),
            first_counterexample: violations.first().map(|v| format!("{v:?}")),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<DocRef>,
    pub outputs: Vec<DocRef>,
    pub certificates: Vec<CertificateSummary>,
    pub results: BTreeMap<String, Value>,
    /// Present only when timing was requested, so reports stay reproducible by default.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl RunReport {
    pub fn new(command: &str) -> RunReport {
        RunReport {
            command: command.into(),
            ..RunReport::default()
        }
    }

    pub fn all_passed(&self) -> bool {
        self.certificates.iter().all(CertificateSummary::ok)
    }

    pub fn certify(&mut self, c: CertificateSummary) {
        self.certificates.push(c);
    }

    pub fn result(&mut self, key: &str, v: impl Into<Value>) {
        self.results.insert(key.into(), v.into());
    }

    pub fn to_text(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        let mut out = String::new();
        write_value(&v, 0, &mut out);
        out.push('\n');
        out
    }
}
