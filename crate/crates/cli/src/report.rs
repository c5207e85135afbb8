use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// What a command produced. `verified` is set only by commands that check an identity.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub result: Value,
    pub witnesses: Map<String, Value>,
    pub verified: Option<bool>,
    pub wall_time_ms: u128,
    /// Optional human-readable rendering of the result for `--format pretty`.
    pub summary: Option<String>,
    /// Tabular form used for `--format csv` instead of the flattened report.
    pub table: Option<String>,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs_digest": self.inputs_digest,
            "result": self.result,
            "witnesses": self.witnesses,
            "verified": self.verified,
            "wall_time_ms": self.wall_time_ms as u64,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.to_json()).expect("serializable"),
            Format::Csv if self.table.is_some() => self.table.clone().expect("checked"),
            Format::Csv => {
                let mut out = String::from("path,value\n");
                flatten("command", &json!(self.command), &mut out);
                flatten("inputs_digest", &json!(self.inputs_digest), &mut out);
                flatten("result", &self.result, &mut out);
                flatten("witnesses", &Value::Object(self.witnesses.clone()), &mut out);
                flatten("verified", &json!(self.verified), &mut out);
                out
            }
            Format::Pretty => {
                let mut out = format!("command: {}\ninputs:  {}\n", self.command, self.inputs_digest);
                match &self.summary {
                    Some(s) => out.push_str(&format!("result:\n{s}\n")),
                    None => out.push_str(&format!(
                        "result:\n{}\n",
                        serde_json::to_string_pretty(&self.result).expect("serializable")
                    )),
                }
                for (k, v) in &self.witnesses {
                    out.push_str(&format!("witness {k}: {}\n", scalar_text(v)));
                }
                if let Some(v) = self.verified {
                    out.push_str(if v { "verified: yes\n" } else { "verified: NO\n" });
                }
                out.push_str(&format!("time:    {} ms\n", self.wall_time_ms));
                out
            }
        }
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// One `path,value` line per leaf.
fn flatten(path: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                flatten(&format!("{path}.{k}"), x, out);
            }
        }
        Value::Array(a) if !a.is_empty() => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{path}[{i}]"), x, out);
            }
        }
        _ => {
            out.push_str(&csv_field(path));
            out.push(',');
            out.push_str(&csv_field(&scalar_text(v)));
            out.push('\n');
        }
    }
}
