//! Reports: an ordered key-value tree printed as indented text or as JSON.
//!
//! The JSON form is versioned by [`SCHEMA`]. Key order is fixed by the
//! code that builds the report, so output is byte-identical for identical
//! input and seed. Timing is only included on request.

use liefol_core::catalog::{CatalogReport, Claim, ClaimValue, Status};
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "liefol-report/1";

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub results: Map<String, Value>,
    pub claims: Vec<Claim>,
    pub notes: Vec<String>,
    /// Whether the claims that decide the exit code hold.
    pub ok: bool,
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            seed: None,
            samples: None,
            results: Map::new(),
            claims: Vec::new(),
            notes: Vec::new(),
            ok: true,
            timing_ms: None,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.to_string(), value.into());
    }

    /// A yes/no check expected to hold; a failure makes the report fail.
    pub fn check(&mut self, name: &str, holds: bool) {
        self.claims.push(Claim {
            name: name.to_string(),
            expected: Some(ClaimValue::Bool(true)),
            computed: ClaimValue::Bool(holds),
            provenance: None,
            status: if holds { Status::Pass } else { Status::Fail },
        });
        self.ok &= holds;
    }

    /// A check that could not be decided (e.g. an inadmissible parameter).
    pub fn undecided(&mut self, name: &str, computed: &str) {
        self.claims.push(Claim {
            name: name.to_string(),
            expected: Some(ClaimValue::Bool(true)),
            computed: ClaimValue::Text(computed.to_string()),
            provenance: None,
            status: Status::Indeterminate,
        });
    }

    pub fn from_catalog(command: &str, r: &CatalogReport) -> Self {
        let mut rep = Report::new(command);
        rep.seed = Some(r.seed);
        rep.samples = Some(r.samples);
        rep.set("entry", r.entry.as_str());
        rep.set("ambient", r.ambient.as_str());
        let params: Map<String, Value> = r
            .params
            .iter()
            .map(|(k, v)| (k.clone(), Value::from(v.as_str())))
            .collect();
        rep.set("params", params);
        rep.claims = r.claims.clone();
        rep.notes = r.notes.clone();
        rep.ok = r.paper_claims_pass();
        rep
    }

    pub fn exit_code(&self) -> u8 {
        if self.ok {
            crate::error::EXIT_OK
        } else {
            crate::error::EXIT_CLAIM_FAILURE
        }
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("schema".into(), SCHEMA.into());
        m.insert("command".into(), self.command.as_str().into());
        if let Some(s) = self.seed {
            m.insert("seed".into(), s.into());
        }
        if let Some(s) = self.samples {
            m.insert("samples".into(), s.into());
        }
        m.insert("results".into(), Value::Object(self.results.clone()));
        m.insert(
            "claims".into(),
            serde_json::to_value(&self.claims).expect("claims serialize"),
        );
        m.insert("notes".into(), json!(self.notes));
        m.insert("status".into(), (if self.ok { "ok" } else { "claim-failure" }).into());
        if let Some(t) = self.timing_ms {
            m.insert("timing_ms".into(), (t as u64).into());
        }
        Value::Object(m)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("schema: {SCHEMA}\n"));
        out.push_str(&format!("command: {}\n", self.command));
        if let Some(s) = self.seed {
            out.push_str(&format!("seed: {s}\n"));
        }
        if let Some(s) = self.samples {
            out.push_str(&format!("samples: {s}\n"));
        }
        out.push_str("results:\n");
        render_object(&self.results, 2, &mut out);
        if !self.claims.is_empty() {
            out.push_str("claims:\n");
            for c in &self.claims {
                out.push_str(&format!("  {:<13} {} = {}", c.status.to_string(), c.name, c.computed));
                match (&c.expected, c.provenance) {
                    (Some(e), Some(p)) => out.push_str(&format!("  (expected {e}, {p})")),
                    (Some(e), None) => out.push_str(&format!("  (expected {e})")),
                    (None, Some(p)) => out.push_str(&format!("  ({p})")),
                    (None, None) => {}
                }
                out.push('\n');
            }
        }
        if !self.notes.is_empty() {
            out.push_str("notes:\n");
            for n in &self.notes {
                out.push_str(&format!("  - {n}\n"));
            }
        }
        out.push_str(&format!("status: {}\n", if self.ok { "ok" } else { "claim-failure" }));
        if let Some(t) = self.timing_ms {
            out.push_str(&format!("timing_ms: {t}\n"));
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        _ => None,
    }
}

fn render_object(m: &Map<String, Value>, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    for (k, v) in m {
        if let Some(s) = scalar(v) {
            out.push_str(&format!("{pad}{k}: {s}\n"));
            continue;
        }
        out.push_str(&format!("{pad}{k}:\n"));
        match v {
            Value::Object(inner) => render_object(inner, indent + 2, out),
            Value::Array(items) => render_items(items, indent + 2, out),
            _ => unreachable!("scalars handled above"),
        }
    }
}

fn render_items(items: &[Value], indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    for item in items {
        if let Some(s) = scalar(item) {
            out.push_str(&format!("{pad}- {s}\n"));
            continue;
        }
        let mut body = String::new();
        match item {
            Value::Object(inner) => render_object(inner, 0, &mut body),
            Value::Array(inner) => render_items(inner, 0, &mut body),
            _ => unreachable!("scalars handled above"),
        }
        for (i, line) in body.lines().enumerate() {
            let lead = if i == 0 { "- " } else { "  " };
            out.push_str(&format!("{pad}{lead}{line}\n"));
        }
    }
}

/// Several reports in one document (`catalog run --all`).
pub fn bundle_value(command: &str, reports: &[Report]) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "reports": reports.iter().map(Report::to_value).collect::<Vec<_>>(),
        "status": if reports.iter().all(|r| r.ok) { "ok" } else { "claim-failure" },
    })
}

pub fn error_value(command: &str, kind: &str, message: &str) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "error": { "kind": kind, "message": message },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_rendering_nests_objects_and_lists() {
        let mut r = Report::new("liefol demo");
        r.set("dim", 3);
        r.set("weights", json!([4, 2, 0]));
        r.set("samples", json!([{"point": "[1:0]", "rank": 1}]));
        r.check("closed", true);
        let text = r.to_text();
        assert!(text.contains("  dim: 3\n"));
        assert!(text.contains("  weights: [4, 2, 0]\n"));
        assert!(text.contains("    - point: [1:0]\n      rank: 1\n"));
        assert!(text.contains("pass"));
        assert!(text.ends_with("status: ok\n"));
    }

    #[test]
    fn failed_check_sets_exit_code() {
        let mut r = Report::new("x");
        r.check("jacobi identity", false);
        assert_eq!(r.exit_code(), crate::error::EXIT_CLAIM_FAILURE);
        assert_eq!(r.to_value()["status"], "claim-failure");
    }
}
