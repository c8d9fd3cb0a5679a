use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::config::Format;

#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Missing,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format!("{v:.16e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Missing => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => json!(v),
            Cell::Int(v) => json!(v),
            Cell::Missing => Value::Null,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Row {
    pub cells: Vec<Cell>,
    pub error: Option<String>,
}

impl Row {
    pub fn ok(cells: Vec<Cell>) -> Self {
        Row { cells, error: None }
    }
}

/// Tabular command output rendered as CSV (17 significant digits) or as the
/// JSON document `{command, params, results, max_rel_error?}`.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub params: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Row>,
    pub max_rel_error: Option<f64>,
}

impl Report {
    fn has_errors(&self) -> bool {
        self.rows.iter().any(|r| r.error.is_some())
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => self.json(),
        }
    }

    fn csv(&self) -> String {
        let with_errors = self.has_errors();
        let mut out = self.columns.join(",");
        if with_errors {
            out.push_str(",error");
        }
        out.push('\n');
        for row in &self.rows {
            let mut line: Vec<String> = row.cells.iter().map(Cell::csv).collect();
            line.resize(self.columns.len(), String::new());
            if with_errors {
                let msg = row.error.clone().unwrap_or_default();
                line.push(format!("\"{}\"", msg.replace('"', "'")));
            }
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    fn json(&self) -> String {
        let results: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (i, col) in self.columns.iter().enumerate() {
                    obj.insert((*col).to_string(), row.cells.get(i).map_or(Value::Null, Cell::json));
                }
                if let Some(e) = &row.error {
                    obj.insert("error".into(), json!(e));
                }
                Value::Object(obj)
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("command".into(), json!(self.command));
        doc.insert("params".into(), self.params.clone());
        doc.insert("results".into(), Value::Array(results));
        if let Some(m) = self.max_rel_error {
            doc.insert("max_rel_error".into(), json!(m));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("report serializes");
        s.push('\n');
        s
    }
}
