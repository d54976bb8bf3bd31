//! Report envelopes and the text renderer.

use propfact_core::certificate::{Certificate, GraphRecord, Verdict};
use propfact_core::Graph;
use serde::Serialize;
use serde_json::{json, Value};

use crate::Format;

pub fn graph(g: &Graph) -> Value {
    json!(GraphRecord::from(g))
}

/// A finished command: its JSON payload plus any certificates whose
/// verdicts decide the exit status.
pub struct Report {
    pub command: String,
    pub result: Value,
    pub refuted: bool,
    /// Prebuilt text, used instead of the generic renderer.
    pub text: Option<String>,
}

impl Report {
    pub fn new(command: &str, result: impl Serialize) -> Report {
        Report {
            command: command.into(),
            result: serde_json::to_value(result).expect("results serialize"),
            refuted: false,
            text: None,
        }
    }

    pub fn certificates(command: &str, certs: &[Certificate]) -> Report {
        let mut r = if certs.len() == 1 { Report::new(command, &certs[0]) } else { Report::new(command, certs) };
        r.refuted = certs.iter().any(|c| c.verdict == Verdict::Refuted);
        r.text = Some(certificate_table(certs));
        r
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let doc = json!({ "schema": 1, "command": self.command, "result": self.result });
                let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => match &self.text {
                Some(t) => t.clone(),
                None => {
                    let mut rows = Vec::new();
                    flatten("", &self.result, &mut rows);
                    table(&rows)
                }
            },
        }
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) if !m.is_empty() => m.iter().for_each(|(k, v)| flatten(&key(k), v, rows)),
        Value::Array(a) if a.iter().any(|x| x.is_object()) => {
            a.iter().enumerate().for_each(|(i, v)| flatten(&key(&i.to_string()), v, rows))
        }
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

fn table(rows: &[(String, String)]) -> String {
    let w = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<w$}  {v}\n")).collect()
}

pub fn certificate_table(certs: &[Certificate]) -> String {
    let mut out = String::new();
    for c in certs {
        let mut rows = vec![
            ("claim".to_string(), c.claim.clone()),
            ("statement".to_string(), c.statement.clone()),
            ("verdict".to_string(), c.verdict.as_str().to_string()),
            ("bound".to_string(), c.bound.to_string()),
        ];
        if let Some(k) = c.k_max {
            rows.push(("k_max".into(), k.to_string()));
        }
        if let Some(e) = &c.estimate {
            rows.push(("estimate".into(), format!("{} = {}", e.quantity, e.value)));
        }
        for w in &c.witnesses {
            let parts = w.parts.as_ref().map(|p| format!(" {p:?}")).unwrap_or_default();
            rows.push(("witness".into(), format!("{}: {} (order {}){parts}", w.role, w.graph.graph6, w.graph.order)));
        }
        for n in &c.notes {
            rows.push(("note".into(), n.clone()));
        }
        out.push_str(&table(&rows));
        out.push('\n');
    }
    out
}
