//! Verification lines and the report every command produces.

use std::fmt::{self, Display, Write as _};

use serde::Serialize;
use serde_json::{Map, Value as Json};

/// One checked relation: what was expected, what the engine computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub relation: String,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
}

impl Check {
    pub fn compare<T: PartialEq + Display>(relation: impl Into<String>, expected: &T, computed: &T) -> Self {
        Check {
            relation: relation.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            passed: expected == computed,
        }
    }

    pub fn holds(relation: impl Into<String>, expected: impl Into<String>, computed: impl Into<String>, passed: bool) -> Self {
        Check { relation: relation.into(), expected: expected.into(), computed: computed.into(), passed }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag}  {}: expected {}, computed {}", self.relation, self.expected, self.computed)
    }
}

/// Ordered list of named string fields.
pub type Fields = Vec<(String, String)>;

pub fn field(name: &str, value: impl Display) -> (String, String) {
    (name.to_string(), value.to_string())
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub inputs: Fields,
    pub results: Fields,
    /// Per-sample records, if the command samples.
    pub records: Vec<Fields>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

fn object(fields: &Fields) -> Json {
    Json::Object(fields.iter().map(|(k, v)| (k.clone(), Json::String(v.clone()))).collect::<Map<_, _>>())
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        for (title, fields) in [("inputs", &self.inputs), ("results", &self.results)] {
            if fields.is_empty() {
                continue;
            }
            let _ = writeln!(out, "{title}:");
            for (k, v) in fields {
                let _ = writeln!(out, "  {k} = {v}");
            }
        }
        if !self.records.is_empty() {
            let _ = writeln!(out, "records:");
            for (n, rec) in self.records.iter().enumerate() {
                let line: Vec<String> = rec.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                let _ = writeln!(out, "  {}: {}", n + 1, line.join("; "));
            }
        }
        let _ = writeln!(out, "verification:");
        for c in &self.checks {
            let _ = writeln!(out, "  {c}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let ok = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(out, "status: {} ({ok}/{} checks passed)", if self.passed() { "ok" } else { "FAILED" }, self.checks.len());
        out
    }

    pub fn json(&self) -> Json {
        let mut m = Map::new();
        m.insert("command".into(), Json::String(self.command.clone()));
        m.insert("inputs".into(), object(&self.inputs));
        m.insert("results".into(), object(&self.results));
        m.insert("records".into(), Json::Array(self.records.iter().map(object).collect()));
        m.insert(
            "checks".into(),
            serde_json::to_value(&self.checks).expect("checks serialize"),
        );
        m.insert("notes".into(), Json::Array(self.notes.iter().cloned().map(Json::String).collect()));
        m.insert("passed".into(), Json::Bool(self.passed()));
        Json::Object(m)
    }
}
