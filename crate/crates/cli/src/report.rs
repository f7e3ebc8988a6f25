//! Reports: sorted, deterministic, rendered as JSON or as plain text.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use gpcomod::exactla::{format_rational, Rational};
use serde::Serialize;
use serde_json::Value;

use crate::explain::Explain;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub check: String,
    pub reason: String,
    pub witness: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub results: BTreeMap<String, Value>,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            status: Status::Pass,
            results: BTreeMap::new(),
            failures: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn input_error(command: impl Into<String>, message: impl Into<String>) -> Self {
        let mut r = Report::new(command);
        r.status = Status::Error;
        r.failures.push(Failure {
            check: "input".into(),
            reason: message.into(),
            witness: Value::Null,
        });
        r
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.results.insert(key.to_string(), v);
    }

    /// Record a failed check; the report status drops to `fail`.
    pub fn fail(&mut self, check: &str, reason: impl ToString, witness: Value) {
        if self.status == Status::Pass {
            self.status = Status::Fail;
        }
        self.failures.push(Failure {
            check: check.to_string(),
            reason: reason.to_string(),
            witness,
        });
    }

    /// Record an engine error under `check`: input errors set status `error`.
    pub fn fail_err<E: Explain>(&mut self, check: &str, e: &E) {
        self.set(check, false);
        self.fail(check, e, e.witness());
        if e.is_input() {
            self.status = Status::Error;
        }
    }

    /// Record a boolean check; failing checks carry `witness`.
    pub fn check(&mut self, check: &str, ok: bool, reason: &str, witness: Value) {
        self.set(check, ok);
        if !ok {
            self.fail(check, reason, witness);
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        let _ = writeln!(out, "{}: {status}", self.command);
        for (k, v) in &self.results {
            let _ = writeln!(out, "  {k}: {}", compact(v));
        }
        for f in &self.failures {
            let _ = writeln!(out, "  failure [{}]: {}", f.check, f.reason);
            if !f.witness.is_null() {
                let _ = writeln!(out, "    witness: {}", compact(&f.witness));
            }
        }
        if let Some(t) = self.timing_ms {
            let _ = writeln!(out, "  timing_ms: {t}");
        }
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Rational vector as JSON strings such as `"-1/2"`.
pub fn vector(v: &[Rational]) -> Value {
    Value::Array(
        v.iter()
            .map(|q| Value::String(format_rational(q)))
            .collect(),
    )
}
