//! Report documents and the tables rendered from them.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Hypothesis,
    Window,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Hypothesis => 2,
            Status::Window => 3,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Hypothesis => "hypothesis_failure",
            Status::Window => "window_insufficient",
        }
    }
}

/// One input file: its path as given and the sha256 of its bytes.
pub struct Input {
    pub path: String,
    pub bytes: Vec<u8>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub struct Report {
    pub command: Vec<String>,
    pub inputs: Vec<Input>,
    pub status: Status,
    pub result: Value,
    pub error: Option<String>,
    /// Non-fatal findings; the key is omitted when empty.
    pub warnings: Vec<String>,
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn to_value(&self) -> Value {
        let inputs: Vec<Value> = self
            .inputs
            .iter()
            .map(|i| json!({ "path": i.path, "sha256": sha256_hex(&i.bytes) }))
            .collect();
        let mut doc = Map::new();
        doc.insert("ncproj_report".into(), json!(SCHEMA_VERSION));
        doc.insert("command".into(), json!(self.command));
        doc.insert("inputs".into(), Value::Array(inputs));
        doc.insert("status".into(), json!(self.status.label()));
        doc.insert("exit_code".into(), json!(self.status.exit_code()));
        doc.insert("result".into(), self.result.clone());
        if let Some(e) = &self.error {
            doc.insert("error".into(), json!(e));
        }
        if !self.warnings.is_empty() {
            doc.insert("warnings".into(), json!(self.warnings));
        }
        if let Some(t) = self.timing_ms {
            doc.insert("timing_ms".into(), json!(t as u64));
        }
        Value::Object(doc)
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values serialize");
        s.push('\n');
        s
    }
}

/// Human-readable rendering of a report document; everything shown comes from the JSON.
pub fn render(doc: &Value) -> String {
    let mut out = String::new();
    if let Some(cmd) = doc.get("command").and_then(Value::as_array) {
        let words: Vec<String> = cmd.iter().map(scalar_text).collect();
        out.push_str(&format!("ncproj {}\n", words.join(" ")));
    }
    if let Some(s) = doc.get("status") {
        out.push_str(&format!("status: {}\n", scalar_text(s)));
    }
    if let Some(e) = doc.get("error") {
        out.push_str(&format!("error: {}\n", scalar_text(e)));
    }
    for w in doc.get("warnings").and_then(Value::as_array).into_iter().flatten() {
        out.push_str(&format!("warning: {}\n", scalar_text(w)));
    }
    if let Some(r) = doc.get("result").filter(|r| !r.is_null()) {
        render_value(&mut out, "", r);
    }
    out
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn render_value(out: &mut String, key: &str, v: &Value) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let name = if key.is_empty() { k.clone() } else { format!("{}.{}", key, k) };
                render_value(out, &name, child);
            }
        }
        Value::Array(items) if items.iter().all(is_scalar) => {
            let cells: Vec<String> = items.iter().map(scalar_text).collect();
            out.push_str(&format!("{}: [{}]\n", key, cells.join(", ")));
        }
        Value::Array(items) if items.iter().all(|i| i.is_object()) => {
            out.push_str(&format!("{}:\n", key));
            render_rows(out, items);
        }
        Value::Array(items) => {
            out.push_str(&format!("{}:\n", key));
            for (i, item) in items.iter().enumerate() {
                render_value(out, &format!("  {}[{}]", key, i), item);
            }
        }
        scalar => out.push_str(&format!("{}: {}\n", key, scalar_text(scalar))),
    }
}

fn render_rows(out: &mut String, rows: &[Value]) {
    let mut columns: Vec<String> = Vec::new();
    for r in rows {
        for k in r.as_object().expect("row objects").keys() {
            if !columns.contains(k) {
                columns.push(k.clone());
            }
        }
    }
    let cell = |r: &Value, c: &str| -> String {
        match r.get(c) {
            None => String::new(),
            Some(v) if is_scalar(v) => scalar_text(v),
            Some(Value::Array(items)) if items.iter().all(is_scalar) => {
                format!("[{}]", items.iter().map(scalar_text).collect::<Vec<_>>().join(","))
            }
            Some(v) => v.to_string(),
        }
    };
    let widths: Vec<usize> = columns
        .iter()
        .map(|c| rows.iter().map(|r| cell(r, c).len()).max().unwrap_or(0).max(c.len()))
        .collect();
    let line = |cells: Vec<String>| -> String {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{:>w$}", c, w = w)).collect();
        format!("  {}\n", padded.join("  "))
    };
    out.push_str(&line(columns.clone()));
    for r in rows {
        out.push_str(&line(columns.iter().map(|c| cell(r, c)).collect()));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted_and_timing_optional() {
        let r = Report {
            command: vec!["hilbert".into()],
            inputs: vec![Input { path: "a".into(), bytes: b"abc".to_vec() }],
            status: Status::Ok,
            result: json!({ "zeta": 1, "alpha": [1, 2] }),
            error: None,
            warnings: Vec::new(),
            timing_ms: None,
        };
        let s = r.to_json();
        assert!(s.find("\"alpha\"").unwrap() < s.find("\"zeta\"").unwrap());
        assert!(s.find("\"command\"").unwrap() < s.find("\"ncproj_report\"").unwrap());
        assert!(!s.contains("timing"));
        assert!(s.contains("ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"));
    }

    #[test]
    fn rendering_uses_rows() {
        let doc = json!({
            "command": ["torsion", "m.spec"],
            "status": "ok",
            "result": { "degrees": [{ "degree": 0, "dim": 1 }, { "degree": 1, "dim": 2 }], "bound": 3 }
        });
        let t = render(&doc);
        assert!(t.contains("bound: 3"));
        assert!(t.contains("degree  dim"));
    }
}
