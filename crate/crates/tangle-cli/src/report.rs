//! Report assembly and output formats.
//!
//! Every command emits the same envelope:
//! `{command, seed, inputs, results, residuals, config}`. Maps are ordered
//! (BTreeMap) and no timestamps or host data are recorded, so a fixed seed
//! and fixed flags reproduce the output byte for byte. Residuals always
//! carry the tolerance they were checked against.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Residual {
    pub value: f64,
    pub tol: f64,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub inputs: Vec<String>,
    pub results: BTreeMap<String, Value>,
    pub residuals: BTreeMap<String, Residual>,
    pub config: Value,
}

impl Report {
    pub fn new(command: &str, seed: u64) -> Report {
        Report {
            command: command.to_string(),
            seed,
            inputs: Vec::new(),
            residuals: BTreeMap::new(),
            results: BTreeMap::new(),
            config: Value::Null,
        }
    }

    pub fn result(&mut self, key: &str, value: Value) {
        self.results.insert(key.to_string(), value);
    }

    pub fn residual(&mut self, key: &str, value: f64, tol: f64) {
        self.residuals
            .insert(key.to_string(), Residual { value, tol });
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serialization");
        text.push('\n');
        text
    }
}

/// One row of a CSV table; columns missing from a row print as empty cells.
pub struct CsvTable {
    columns: Vec<&'static str>,
    rows: Vec<BTreeMap<&'static str, String>>,
}

impl CsvTable {
    pub fn new(columns: Vec<&'static str>) -> CsvTable {
        CsvTable {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<(&'static str, String)>) {
        self.rows.push(cells.into_iter().collect());
    }

    pub fn render(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = self
                .columns
                .iter()
                .map(|c| row.get(c).cloned().unwrap_or_default())
                .collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn f64_cell(x: f64) -> String {
    format!("{x:.17e}")
}

pub fn number(x: f64) -> Value {
    json!(x)
}
