use std::io::{self, Write};

use serde_json::{json, Map, Value};

pub const SCHEMA: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

/// Outcome of one command: a JSON body, the same data as TSV rows, and any
/// itemized mismatches.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub body: Map<String, Value>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub mismatches: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str) -> Report {
        Report {
            command,
            body: Map::new(),
            header: Vec::new(),
            rows: Vec::new(),
            mismatches: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn set(&mut self, key: &str, value: impl serde::Serialize) {
        let value = serde_json::to_value(value).expect("report values serialize");
        self.body.insert(key.to_string(), value);
    }

    pub fn check(&mut self, ok: bool, mismatch: impl FnOnce() -> String) {
        if !ok {
            self.mismatches.push(mismatch());
        }
    }

    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("schema".into(), json!(SCHEMA));
        out.insert("command".into(), json!(self.command));
        out.insert("passed".into(), json!(self.passed()));
        for (k, v) in &self.body {
            out.insert(k.clone(), v.clone());
        }
        out.insert("mismatches".into(), json!(self.mismatches));
        Value::Object(out)
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer(&mut *out, &self.to_json())?;
                writeln!(out)
            }
            Format::Tsv => {
                if !self.header.is_empty() {
                    writeln!(out, "{}", self.header.join("\t"))?;
                }
                for row in &self.rows {
                    writeln!(out, "{}", row.join("\t"))?;
                }
                for m in &self.mismatches {
                    writeln!(out, "# mismatch\t{m}")?;
                }
                Ok(())
            }
        }
    }
}
