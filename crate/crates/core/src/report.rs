//! Machine-readable verification reports.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::matrix::{MatrixWindow, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of one named check, with optional sub-checks. A report passes
/// when its own verdict and every child's verdict pass.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub check: String,
    pub verdict: Verdict,
    pub witnesses: Vec<Value>,
    pub norms: Vec<Value>,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub details: Map<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Report>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            verdict: Verdict::Pass,
            witnesses: Vec::new(),
            norms: Vec::new(),
            details: Map::new(),
            children: Vec::new(),
        }
    }

    /// A report whose verdict is `ok`.
    pub fn from_bool(check: impl Into<String>, ok: bool) -> Self {
        let mut r = Report::new(check);
        r.require(ok);
        r
    }

    /// Exact zero test on a matrix; records the first nonzero entry.
    pub fn exact_zero(check: impl Into<String>, m: &MatrixWindow) -> Self {
        let mut r = Report::new(check);
        r.detail("nonzeros", m.nnz());
        if let Some(w) = m.first_witness() {
            r.fail_with(&w);
        }
        r
    }

    pub fn require(&mut self, ok: bool) -> &mut Self {
        if !ok {
            self.verdict = Verdict::Fail;
        }
        self
    }

    pub fn fail_with(&mut self, w: &Witness) -> &mut Self {
        self.verdict = Verdict::Fail;
        self.witnesses.push(w.to_json());
        self
    }

    pub fn witness(&mut self, w: &Witness) -> &mut Self {
        self.witnesses.push(w.to_json());
        self
    }

    pub fn norm(&mut self, v: Value) -> &mut Self {
        self.norms.push(v);
        self
    }

    pub fn detail(&mut self, key: &str, v: impl Serialize) -> &mut Self {
        self.details.insert(
            key.to_string(),
            serde_json::to_value(v).unwrap_or(Value::Null),
        );
        self
    }

    pub fn child(&mut self, r: Report) -> &mut Self {
        self.children.push(r);
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass && self.children.iter().all(Report::passed)
    }

    /// Checks that failed, depth first, by name.
    pub fn failures(&self) -> Vec<&Report> {
        let mut out = Vec::new();
        if self.verdict == Verdict::Fail {
            out.push(self);
        }
        for c in &self.children {
            out.extend(c.failures());
        }
        out
    }

    pub fn find(&self, check: &str) -> Option<&Report> {
        if self.check == check {
            return Some(self);
        }
        self.children.iter().find_map(|c| c.find(check))
    }

    /// JSON with the overall verdict folded in from the children.
    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        if let Value::Object(ref mut o) = v {
            o.insert(
                "verdict".into(),
                Value::String(if self.passed() { "pass" } else { "fail" }.into()),
            );
        }
        v
    }
}
