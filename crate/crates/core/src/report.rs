//! Structured verification reports.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Case {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs_hash: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs_hash: Option<String>,
}

impl Case {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        Self {
            name: name.into(),
            status,
            sign: None,
            witness: None,
            note: None,
            lhs_hash: None,
            rhs_hash: None,
        }
    }

    pub fn pass(name: impl Into<String>) -> Self {
        Self::new(name, Status::Pass)
    }

    pub fn fail(name: impl Into<String>) -> Self {
        Self::new(name, Status::Fail)
    }

    pub fn error(name: impl Into<String>, message: impl Into<String>) -> Self {
        Self::new(name, Status::Error).with_note(message)
    }

    /// Pass iff `ok`.
    pub fn check(name: impl Into<String>, ok: bool) -> Self {
        Self::new(name, if ok { Status::Pass } else { Status::Fail })
    }

    pub fn with_sign(mut self, sign: i8) -> Self {
        self.sign = Some(sign);
        self
    }

    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_hashes(mut self, lhs: &Value, rhs: &Value) -> Self {
        self.lhs_hash = Some(hash_value(lhs));
        self.rhs_hash = Some(hash_value(rhs));
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub suite: String,
    pub cases: Vec<Case>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Self {
            suite: suite.into(),
            cases: Vec::new(),
        }
    }

    pub fn push(&mut self, case: Case) {
        self.cases.push(case);
    }

    pub fn extend(&mut self, cases: impl IntoIterator<Item = Case>) {
        self.cases.extend(cases);
    }

    pub fn all_pass(&self) -> bool {
        self.cases.iter().all(Case::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.passed())
    }

    /// Schema-versioned JSON with cases sorted by name.
    pub fn to_json(&self) -> Value {
        let mut cases = self.cases.clone();
        cases.sort_by(|a, b| a.name.cmp(&b.name));
        serde_json::json!({
            "schema": 1,
            "suite": self.suite,
            "exact": true,
            "cases": cases,
        })
    }
}

/// SHA-256 of the compact serialization (object keys are sorted).
pub fn hash_value(v: &Value) -> String {
    let bytes = serde_json::to_vec(v).expect("JSON values serialize");
    hex::encode(Sha256::digest(bytes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cases_are_sorted_and_schema_versioned() {
        let mut r = Report::new("demo");
        r.push(Case::pass("b"));
        r.push(Case::fail("a").with_sign(-1));
        let v = r.to_json();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["exact"], true);
        assert_eq!(v["cases"][0]["name"], "a");
        assert_eq!(v["cases"][0]["status"], "fail");
        assert!(v["cases"][1].get("sign").is_none());
        assert!(!r.all_pass());
    }

    #[test]
    fn hash_is_stable() {
        let v = serde_json::json!({"b": 1, "a": [1, 2]});
        let w = serde_json::json!({"a": [1, 2], "b": 1});
        assert_eq!(hash_value(&v), hash_value(&w));
        assert_eq!(hash_value(&v).len(), 64);
    }
}
