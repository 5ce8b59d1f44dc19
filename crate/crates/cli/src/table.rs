//! Comma-separated tables preceded by `# key=value` metadata lines.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::CliError;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Self {
            columns,
            ..Self::default()
        }
    }

    pub fn meta(&mut self, key: impl Into<String>, value: impl ToString) {
        self.metadata.push((key.into(), value.to_string()));
    }

    pub fn get_meta(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Parses every cell of a column as `f64`.
    pub fn column_f64(&self, name: &str) -> Result<Vec<f64>, CliError> {
        let i = self
            .column_index(name)
            .ok_or_else(|| CliError::Io(format!("no column named {name:?}")))?;
        self.rows
            .iter()
            .map(|row| {
                row[i].parse().map_err(|_| {
                    CliError::Io(format!("column {name:?}: {:?} is not a number", row[i]))
                })
            })
            .collect()
    }

    pub fn write_to<W: Write>(&self, out: W) -> Result<(), CliError> {
        let mut out = BufWriter::new(out);
        for (k, v) in &self.metadata {
            if k.contains('=') || k.contains('\n') || v.contains('\n') {
                return Err(CliError::Io(format!(
                    "metadata entry {k:?} cannot be written on one line"
                )));
            }
            writeln!(out, "# {k}={v}").map_err(io)?;
        }
        let mut csv = csv::Writer::from_writer(out);
        csv.write_record(&self.columns).map_err(io)?;
        for row in &self.rows {
            csv.write_record(row).map_err(io)?;
        }
        csv.flush().map_err(io)?;
        Ok(())
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let file =
            File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        self.write_to(file)
    }

    pub fn read_from<R: Read>(mut input: R) -> Result<Self, CliError> {
        let mut text = String::new();
        input.read_to_string(&mut text).map_err(io)?;
        let mut metadata = Vec::new();
        let mut body = 0;
        for line in text.split_inclusive('\n') {
            let Some(entry) = line.strip_prefix("# ") else {
                break;
            };
            let (k, v) = entry
                .trim_end_matches('\n')
                .split_once('=')
                .ok_or_else(|| CliError::Io(format!("malformed metadata line {line:?}")))?;
            metadata.push((k.to_string(), v.to_string()));
            body += line.len();
        }
        let mut reader = csv::Reader::from_reader(&text.as_bytes()[body..]);
        let columns = reader
            .headers()
            .map_err(io)?
            .iter()
            .map(String::from)
            .collect();
        let rows = reader
            .records()
            .map(|r| {
                r.map(|rec| rec.iter().map(String::from).collect())
                    .map_err(io)
            })
            .collect::<Result<_, _>>()?;
        Ok(Self {
            metadata,
            columns,
            rows,
        })
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let file =
            File::open(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::read_from(file)
    }
}

fn io(e: impl std::fmt::Display) -> CliError {
    CliError::Io(e.to_string())
}
