use std::io::{self, Write};

use serde_json::{json, Map, Value};

use crate::{Format, RunConfig, VERSION};

/// A named table of string cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Everything a command prints: one or more tables plus scalar notes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TableSet {
    pub tables: Vec<Table>,
    pub notes: Vec<(String, String)>,
}

impl TableSet {
    pub fn note(&mut self, key: &str, value: impl ToString) {
        self.notes.push((key.into(), value.to_string()));
    }

    pub fn write(&self, config: &RunConfig, out: &mut dyn Write) -> io::Result<()> {
        match config.format {
            Format::Csv => self.write_csv(config, out),
            Format::Json => self.write_json(config, out),
        }
    }

    fn write_csv(&self, config: &RunConfig, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "# dealmix {VERSION} {}", config.to_text())?;
        for (key, value) in &self.notes {
            writeln!(out, "# {key}={value}")?;
        }
        for (i, table) in self.tables.iter().enumerate() {
            if self.tables.len() > 1 {
                if i > 0 {
                    writeln!(out)?;
                }
                writeln!(out, "# table {}", table.name)?;
            }
            let mut writer = csv::Writer::from_writer(&mut *out);
            writer.write_record(&table.columns)?;
            for row in &table.rows {
                writer.write_record(row)?;
            }
            writer.flush()?;
        }
        Ok(())
    }

    fn write_json(&self, config: &RunConfig, out: &mut dyn Write) -> io::Result<()> {
        let tables: Map<String, Value> = self
            .tables
            .iter()
            .map(|t| {
                let rows: Vec<Value> = t
                    .rows
                    .iter()
                    .map(|r| {
                        Value::Object(t.columns.iter().cloned().zip(r.iter().cloned().map(Value::String)).collect())
                    })
                    .collect();
                (t.name.clone(), Value::Array(rows))
            })
            .collect();
        let notes: Map<String, Value> =
            self.notes.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        let doc = json!({
            "tool": "dealmix",
            "version": VERSION,
            "config": config,
            "notes": notes,
            "tables": tables,
        });
        serde_json::to_writer_pretty(&mut *out, &doc)?;
        writeln!(out)
    }
}
