//! Report rendering: one schema, two serializations.
//!
//! CSV is the reproducibility contract: `# key = value` config-echo lines,
//! one header row, data rows, LF endings, exact rationals as "num/den".
//! JSON carries the same cells as one object — its `runtime_ms` field is the
//! only part of any report allowed to differ between identical runs.

use num_rational::BigRational;
use serde_json::{json, Map, Value};

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// A finished experiment: config echo, fixed column order, stringly cells.
/// Everything is pre-rendered so both serializers emit identical content.
#[derive(Clone, Debug)]
pub struct Report {
    pub experiment: &'static str,
    /// echoed configuration, sorted by key; never includes the worker count
    /// (results must not depend on it, so it is not part of the identity)
    pub config: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub runtime_ms: u128,
}

impl Report {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# experiment = {}\n", self.experiment));
        out.push_str(&format!("# version = {ARTIFACT_VERSION}\n"));
        for (k, v) in &self.config {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            debug_assert_eq!(row.len(), self.columns.len());
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut config = Map::new();
        config.insert("experiment".into(), json!(self.experiment));
        for (k, v) in &self.config {
            config.insert(k.clone(), json!(v));
        }
        let cells: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut cell = Map::new();
                for (col, val) in self.columns.iter().zip(row) {
                    cell.insert((*col).into(), json!(val));
                }
                Value::Object(cell)
            })
            .collect();
        let doc = json!({
            "config": Value::Object(config),
            "cells": cells,
            "runtime_ms": self.runtime_ms as u64,
            "version": ARTIFACT_VERSION,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
        text.push('\n');
        text
    }
}

/// Exact rational as "num/den" — the only sanctioned rendering; decimals
/// would quietly round goldens.
pub fn rational_cell(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Floats print in Rust's shortest round-trip form: deterministic for
/// identical bit patterns, and identical bit patterns are what the runner
/// guarantees.
pub fn float_cell(v: f64) -> String {
    format!("{v}")
}

/// Sorted "key:count;key:count" histogram cell; "-" when empty.
pub fn hist_cell<I: IntoIterator<Item = (u64, u64)>>(entries: I) -> String {
    let parts: Vec<String> = entries
        .into_iter()
        .map(|(k, c)| format!("{k}:{c}"))
        .collect();
    if parts.is_empty() {
        "-".to_string()
    } else {
        parts.join(";")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn demo() -> Report {
        Report {
            experiment: "demo",
            config: vec![
                ("seed".into(), "7".into()),
                ("trials".into(), "100".into()),
            ],
            columns: vec!["n", "rate"],
            rows: vec![
                vec!["2".into(), "1/4".into()],
                vec!["3".into(), "3/8".into()],
            ],
            runtime_ms: 5,
        }
    }

    #[test]
    fn csv_shape() {
        let csv = demo().to_csv();
        let want = format!(
            "# experiment = demo\n# version = {ARTIFACT_VERSION}\n# seed = 7\n\
             # trials = 100\nn,rate\n2,1/4\n3,3/8\n"
        );
        assert_eq!(csv, want);
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn json_shape() {
        let text = demo().to_json();
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["config"]["experiment"], "demo");
        assert_eq!(doc["config"]["seed"], "7");
        assert_eq!(doc["cells"][1]["rate"], "3/8");
        assert_eq!(doc["version"], ARTIFACT_VERSION);
        assert!(doc["runtime_ms"].is_u64());
        // key order is stable: config before cells, insertion order inside
        let pos_config = text.find("\"config\"").unwrap();
        let pos_cells = text.find("\"cells\"").unwrap();
        assert!(pos_config < pos_cells);
    }

    #[test]
    fn cell_renderers() {
        let r = BigRational::new(BigInt::from(-3), BigInt::from(8));
        assert_eq!(rational_cell(&r), "-3/8");
        assert_eq!(float_cell(0.25), "0.25");
        assert_eq!(float_cell(1.0 / 3.0), "0.3333333333333333");
        assert_eq!(hist_cell([(0, 4), (2, 1)]), "0:4;2:1");
        assert_eq!(hist_cell(std::iter::empty()), "-");
    }
}
