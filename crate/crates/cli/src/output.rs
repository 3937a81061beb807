//! CSV and JSON emission. Reports are rendered in memory and written in one go,
//! so a failed run leaves no partial output behind.

use std::io::Write;

use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Format, RunConfig};
use crate::error::CliError;

/// A table row with a fixed CSV header.
pub trait Row: Serialize {
    const HEADER: &'static [&'static str];
}

pub struct Report {
    pub command: &'static str,
    pub csv: String,
    pub json_rows: Value,
    /// Summary lines for stderr.
    pub notes: Vec<String>,
    /// Set when the report was produced but an invariant failed.
    pub failure: Option<String>,
}

impl Report {
    pub fn from_rows<R: Row>(command: &'static str, rows: &[R]) -> Result<Self, CliError> {
        Ok(Self {
            command,
            csv: csv_table(rows)?,
            json_rows: serde_json::to_value(rows).map_err(|e| CliError::Encode(e.to_string()))?,
            notes: Vec::new(),
            failure: None,
        })
    }

    pub fn render(&self, config: &RunConfig) -> Result<String, CliError> {
        match config.format {
            Format::Csv => Ok(self.csv.clone()),
            Format::Json => {
                let doc = json!({ "command": self.command, "config": config, "rows": self.json_rows });
                let mut text = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Encode(e.to_string()))?;
                text.push('\n');
                Ok(text)
            }
        }
    }

    pub fn write(&self, config: &RunConfig) -> Result<(), CliError> {
        let text = self.render(config)?;
        match &config.output_path {
            Some(path) => std::fs::write(path, text)?,
            None => std::io::stdout().lock().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

pub fn csv_table<R: Row>(rows: &[R]) -> Result<String, CliError> {
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    let encode = |e: csv::Error| CliError::Encode(e.to_string());
    writer.write_record(R::HEADER).map_err(encode)?;
    for row in rows {
        writer.serialize(row).map_err(encode)?;
    }
    let bytes = writer.into_inner().map_err(|e| CliError::Encode(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Encode(e.to_string()))
}
