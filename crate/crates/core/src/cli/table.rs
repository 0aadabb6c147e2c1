//! Result tables and their Markdown, CSV and JSON renderings.
//!
//! Every cell is a string. Numbers are written in decimal by [`decimal`],
//! so no value passes through a binary double on the way out.

use rug::Float;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Md,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub title: String,
    /// Working precision of every number in the table.
    pub bits: u32,
    /// Significant decimal digits printed.
    pub digits: u32,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub notes: Vec<String>,
}

/// `x` with `digits` significant decimal digits.
pub fn decimal(x: &Float, digits: u32) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits.max(1) as usize))
}

/// Three significant digits, for error columns.
pub fn short(x: &Float) -> String {
    decimal(x, 3)
}

impl Table {
    pub fn new(title: impl Into<String>, bits: u32, digits: u32, columns: &[&str]) -> Self {
        Self {
            title: title.into(),
            bits,
            digits,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Md => self.to_markdown(),
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("## {}\n\nprecision: {} bits, {} digits\n\n", self.title, self.bits, self.digits);
        out.push_str(&format!("| {} |\n", self.columns.join(" | ")));
        out.push_str(&format!("|{}\n", "---|".repeat(self.columns.len())));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.replace('|', "\\|")).collect();
            out.push_str(&format!("| {} |\n", cells.join(" | ")));
        }
        if !self.notes.is_empty() {
            out.push('\n');
            for n in &self.notes {
                out.push_str(&format!("- {n}\n"));
            }
        }
        out
    }

    /// Header plus one record per row; `bits` and `digits` are appended to
    /// every record.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = self.columns.clone();
        header.extend(["bits".to_string(), "digits".to_string()]);
        w.write_record(&header).expect("writing to memory");
        for row in &self.rows {
            let mut rec = row.clone();
            rec.extend([self.bits.to_string(), self.digits.to_string()]);
            w.write_record(&rec).expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("flushing to memory")).expect("csv output is utf-8")
    }

    pub fn to_json_value(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.clone(), Value::String(v.clone())))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut top = Map::new();
        top.insert("title".into(), Value::String(self.title.clone()));
        top.insert("bits".into(), Value::String(self.bits.to_string()));
        top.insert("digits".into(), Value::String(self.digits.to_string()));
        top.insert("columns".into(), Value::Array(self.columns.iter().cloned().map(Value::String).collect()));
        top.insert("rows".into(), Value::Array(rows));
        top.insert("notes".into(), Value::Array(self.notes.iter().cloned().map(Value::String).collect()));
        Value::Object(top)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("json encoding");
        s.push('\n');
        s
    }
}
