use serde::Serialize;
use serde_json::Value;

pub const REPORT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportOptions {
    pub field: Option<String>,
    pub trunc_degree: usize,
}

/// Result of one query. Exactly one of `value` (compute) and `verdict`
/// (check) is present.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Entry {
    pub query: String,
    pub subject: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Value>,
    pub caveats: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub query: String,
    pub subject: String,
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub options: ReportOptions,
    pub entries: Vec<Entry>,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per entry.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let line = match (&e.value, &e.verdict) {
                (Some(v), _) => format!("{} {} = {}", e.query, e.subject, plain(v)),
                (_, Some(v)) => format!("check {} {}: {}", e.query, e.subject, plain(v)),
                _ => unreachable!(),
            };
            out.push_str(&line);
            if !e.caveats.is_empty() {
                out.push_str(&format!("  [{}]", e.caveats.join(", ")));
            }
            out.push('\n');
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
