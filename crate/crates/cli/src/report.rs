//! Reports with a fixed key order, rendered as plain text or as JSON with
//! the same keys.

use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Machine,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    fields: Map<String, Value>,
    lines: Vec<String>,
    pass: bool,
    checked: bool,
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

impl Report {
    pub fn new() -> Self {
        Report { pass: true, ..Default::default() }
    }

    /// `key: value` on its own line.
    pub fn kv(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        let value = value.into();
        self.lines.push(format!("{key}: {}", scalar(&value)));
        self.fields.insert(key.to_string(), value);
        self
    }

    /// Several pairs on one text line, `k1: v1, k2: v2`.
    pub fn inline(&mut self, pairs: Vec<(&str, Value)>) -> &mut Self {
        let text: Vec<String> = pairs.iter().map(|(k, v)| format!("{k}: {}", scalar(v))).collect();
        self.lines.push(text.join(", "));
        for (k, v) in pairs {
            self.fields.insert(k.to_string(), v);
        }
        self
    }

    /// A boolean that must hold for the command to succeed.
    pub fn check(&mut self, key: &str, ok: bool) -> &mut Self {
        self.pass &= ok;
        self.checked = true;
        self.kv(key, ok)
    }

    pub fn section(&mut self, key: &str, inner: Report) -> &mut Self {
        self.lines.push(format!("{key}:"));
        self.lines.extend(inner.lines.iter().map(|l| format!("  {l}")));
        self.absorb(&inner);
        self.fields.insert(key.to_string(), Value::Object(inner.fields));
        self
    }

    pub fn items(&mut self, key: &str, items: Vec<Report>) -> &mut Self {
        self.lines.push(format!("{key}:"));
        let mut json = Vec::with_capacity(items.len());
        for item in items {
            for (i, l) in item.lines.iter().enumerate() {
                let lead = if i == 0 { "- " } else { "  " };
                self.lines.push(format!("  {lead}{l}"));
            }
            self.absorb(&item);
            json.push(Value::Object(item.fields));
        }
        self.fields.insert(key.to_string(), Value::Array(json));
        self
    }

    fn absorb(&mut self, inner: &Report) {
        self.pass &= inner.pass;
        self.checked |= inner.checked;
    }

    /// False once any recorded check failed.
    pub fn passed(&self) -> bool {
        self.pass
    }

    pub fn has_checks(&self) -> bool {
        self.checked
    }

    pub fn fields(&self) -> &Map<String, Value> {
        &self.fields
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut out = self.lines.join("\n");
                out.push('\n');
                out
            }
            Format::Machine => {
                let mut out = serde_json::to_string_pretty(&self.fields).expect("json values serialize");
                out.push('\n');
                out
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_and_json_share_keys() {
        let mut inner = Report::new();
        inner.kv("rank", 1).check("ok", false);
        let mut r = Report::new();
        r.inline(vec![("objects", json!(4)), ("pi0", json!(2))]).section("h", inner);
        assert_eq!(r.render(Format::Text), "objects: 4, pi0: 2\nh:\n  rank: 1\n  ok: false\n");
        let keys: Vec<&String> = r.fields().keys().collect();
        assert_eq!(keys, ["objects", "pi0", "h"]);
        assert!(!r.passed());
    }
}
