//! Record rendering: JSON lines, CSV or plain text.

use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub struct Output {
    sink: Box<dyn Write>,
    format: Format,
    csv_header: Option<Vec<String>>,
    records: usize,
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Rows for CSV: nested `table` entries are expanded, one row each, after the
/// record's scalar fields.
fn csv_rows(v: &Value) -> Vec<Map<String, Value>> {
    let Value::Object(obj) = v else {
        let mut m = Map::new();
        m.insert("value".into(), v.clone());
        return vec![m];
    };
    let head: Map<String, Value> = obj
        .iter()
        .filter(|(k, _)| k.as_str() != "table")
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    match obj.get("table") {
        Some(Value::Array(rows)) if !rows.is_empty() => rows
            .iter()
            .map(|row| {
                let mut m = head.clone();
                if let Value::Object(r) = row {
                    m.extend(r.iter().map(|(k, v)| (k.clone(), v.clone())));
                }
                m
            })
            .collect(),
        _ => vec![head],
    }
}

fn write_text(w: &mut dyn Write, v: &Value, indent: usize) -> io::Result<()> {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(obj) => {
            for (k, val) in obj {
                match val {
                    Value::Array(items) if items.iter().any(Value::is_object) => {
                        writeln!(w, "{pad}{k}:")?;
                        for item in items {
                            let line: Vec<String> = match item {
                                Value::Object(o) => o.iter().map(|(k, v)| format!("{k}={}", scalar_text(v))).collect(),
                                other => vec![scalar_text(other)],
                            };
                            writeln!(w, "{pad}  {}", line.join(" "))?;
                        }
                    }
                    Value::Object(_) => {
                        writeln!(w, "{pad}{k}:")?;
                        write_text(w, val, indent + 2)?;
                    }
                    _ => writeln!(w, "{pad}{k}: {}", scalar_text(val))?,
                }
            }
            Ok(())
        }
        other => writeln!(w, "{pad}{}", scalar_text(other)),
    }
}

impl Output {
    pub fn new(sink: Box<dyn Write>, format: Format) -> Output {
        Output { sink, format, csv_header: None, records: 0 }
    }

    pub fn record<T: Serialize>(&mut self, value: &T) -> io::Result<()> {
        let v = serde_json::to_value(value).map_err(io::Error::other)?;
        match self.format {
            Format::Json => {
                serde_json::to_writer(&mut self.sink, &v).map_err(io::Error::other)?;
                writeln!(self.sink)?;
            }
            Format::Text => {
                if self.records > 0 {
                    writeln!(self.sink)?;
                }
                write_text(&mut self.sink, &v, 0)?;
            }
            Format::Csv => {
                let rows = csv_rows(&v);
                let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(&mut self.sink);
                if self.csv_header.is_none() {
                    let header: Vec<String> = rows.first().map(|r| r.keys().cloned().collect()).unwrap_or_default();
                    w.write_record(&header).map_err(io::Error::other)?;
                    self.csv_header = Some(header);
                }
                let header = self.csv_header.as_ref().expect("set above");
                for row in &rows {
                    let cells = header.iter().map(|k| row.get(k).map(scalar_text).unwrap_or_default());
                    w.write_record(cells).map_err(io::Error::other)?;
                }
                w.flush()?;
            }
        }
        self.records += 1;
        // searches stream, so push each record out immediately
        self.sink.flush()
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.sink.flush()
    }
}
