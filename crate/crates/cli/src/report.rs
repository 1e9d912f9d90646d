use std::time::Instant;

use serde_json::{json, Map, Value};

/// Flat, ordered report document. Schema version 1: `schema`, `command`,
/// `input_digest` first, command-specific fields next, `elapsed_ms` last.
pub struct Report {
    fields: Vec<(String, Value)>,
}

impl Report {
    pub fn new(command: &str, input_digest: &str) -> Self {
        let mut report = Report { fields: Vec::new() };
        report.set("schema", json!(1));
        report.set("command", json!(command));
        report.set("input_digest", json!(input_digest));
        report
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.fields.push((key.to_string(), value));
    }

    pub fn print(mut self, started: Instant, as_json: bool) {
        self.set("elapsed_ms", json!(started.elapsed().as_millis() as u64));
        if as_json {
            let map: Map<String, Value> = self.fields.into_iter().collect();
            println!("{}", serde_json::to_string_pretty(&Value::Object(map)).unwrap());
            return;
        }
        for (key, value) in &self.fields {
            match value {
                Value::String(s) if s.contains('\n') => {
                    println!("{key}:");
                    for line in s.lines() {
                        println!("  {line}");
                    }
                }
                Value::String(s) => println!("{key}: {s}"),
                other => println!("{key}: {other}"),
            }
        }
    }
}
