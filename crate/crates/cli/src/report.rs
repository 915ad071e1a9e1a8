use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Run metadata printed with every report.
#[derive(Clone, Debug, Serialize)]
pub struct Header {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    pub budget_seconds: Option<f64>,
    pub catalog_hash: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_seconds: Option<f64>,
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| Value::Object(self.columns.iter().zip(r).map(|(c, v)| (c.to_string(), Value::String(v.clone()))).collect()))
                .collect(),
        )
    }

    pub fn csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|c| csv_cell(c)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn text(&self) -> String {
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|i| self.rows.iter().map(|r| r[i].len()).chain([self.columns[i].len()]).max().unwrap())
            .collect();
        let line = |cells: Vec<&str>| -> String {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(self.columns.clone());
        for r in &self.rows {
            out.push_str(&line(r.iter().map(String::as_str).collect()));
        }
        out
    }
}

fn csv_cell(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

/// A command's output: scalar fields plus an optional table.
#[derive(Clone, Debug, Default)]
pub struct Body {
    pub fields: Map<String, Value>,
    pub table: Option<Table>,
}

impl Body {
    pub fn field(mut self, k: &str, v: impl Serialize) -> Self {
        self.fields.insert(k.to_string(), serde_json::to_value(v).expect("serializable field"));
        self
    }

    pub fn with_table(mut self, t: Table) -> Self {
        self.table = Some(t);
        self
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

pub fn render(header: &Header, body: &Body, format: Format) -> String {
    match format {
        Format::Json => {
            let mut top = match serde_json::to_value(header).unwrap() {
                Value::Object(m) => m,
                _ => unreachable!(),
            };
            let mut result = body.fields.clone();
            if let Some(t) = &body.table {
                result.insert("rows".into(), t.to_json());
            }
            top.insert("result".into(), Value::Object(result));
            serde_json::to_string_pretty(&Value::Object(top)).unwrap() + "\n"
        }
        Format::Csv | Format::Text => {
            let mut out = String::new();
            let _ = write!(
                out,
                "# {} {} {} seed={} budget={} catalog={}",
                header.tool,
                header.version,
                header.command,
                header.seed,
                header.budget_seconds.map_or("none".to_string(), |b| b.to_string()),
                header.catalog_hash
            );
            if let Some(e) = header.elapsed_seconds {
                let _ = write!(out, " elapsed={e:.3}");
            }
            out.push('\n');
            let prefix = if format == Format::Csv { "# " } else { "" };
            for (k, v) in &body.fields {
                let _ = writeln!(out, "{prefix}{k}: {}", scalar(v));
            }
            if let Some(t) = &body.table {
                out.push_str(&if format == Format::Csv { t.csv() } else { t.text() });
            }
            out
        }
    }
}
