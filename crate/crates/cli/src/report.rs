//! Reports: canonical JSON (sorted keys) or TSV tables.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Check {
    Passed(&'static str),
    Violated { violated: String, witness: String },
}

impl Check {
    pub fn ok() -> Self {
        Check::Passed("ok")
    }

    pub fn skipped() -> Self {
        Check::Passed("skipped")
    }

    pub fn violated(law: impl Into<String>, witness: impl Into<String>) -> Self {
        Check::Violated { violated: law.into(), witness: witness.into() }
    }

    pub fn is_violation(&self) -> bool {
        matches!(self, Check::Violated { .. })
    }
}

impl From<Result<(), mgce_core::Violation>> for Check {
    fn from(r: Result<(), mgce_core::Violation>) -> Self {
        match r {
            Ok(()) => Check::ok(),
            Err(v) => Check::violated(v.law, v.witness),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub input: BTreeMap<String, Value>,
    pub params: BTreeMap<String, Value>,
    pub tables: BTreeMap<String, Table>,
    pub checks: BTreeMap<String, Check>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn has_violation(&self) -> bool {
        self.checks.values().any(Check::is_violation)
    }

    pub fn to_value(&self) -> Value {
        // serde_json's map is ordered, which makes the output canonical
        json!({
            "input": self.input,
            "params": self.params,
            "tables": self.tables,
            "checks": self.checks,
            "warnings": self.warnings,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serializes");
        s.push('\n');
        s
    }

    /// Tables only: a `# name` line, a header, then one line per row.
    pub fn to_tsv(&self) -> String {
        let cell = |v: &Value| match v {
            Value::String(s) => s.clone(),
            Value::Null => String::new(),
            other => other.to_string(),
        };
        let mut out = String::new();
        for (name, t) in &self.tables {
            out.push_str(&format!("# {name}\n{}\n", t.columns.join("\t")));
            for row in &t.rows {
                out.push_str(&row.iter().map(cell).collect::<Vec<_>>().join("\t"));
                out.push('\n');
            }
        }
        out
    }
}
