//! JSON-lines run reports: a header line, one line per check, a footer line.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: &str = "teich-report/1";

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub name: String,
    pub expected: Value,
    pub computed: Value,
    pub residual: Option<f64>,
    pub pass: bool,
}

impl Record {
    pub fn new(name: impl Into<String>, expected: Value, computed: Value, residual: Option<f64>, pass: bool) -> Self {
        Self { name: name.into(), expected, computed, residual, pass }
    }

    /// A check that could not be carried out.
    pub fn error(name: impl Into<String>, expected: Value, err: impl std::fmt::Display) -> Self {
        Self::new(name, expected, json!({ "error": err.to_string() }), None, false)
    }
}

/// Streams records to `out` and keeps the counts for the footer and the
/// summary on standard error.
pub struct Report<W: Write> {
    out: W,
    command: String,
    total: usize,
    failed: Vec<String>,
    notes: Vec<String>,
    error: Option<io::Error>,
}

impl<W: Write> Report<W> {
    pub fn start(mut out: W, command: &str, seed: u64, args: Value) -> io::Result<Self> {
        let header = json!({ "schema": SCHEMA, "command": command, "seed": seed, "args": args });
        writeln!(out, "{header}")?;
        Ok(Self { out, command: command.to_string(), total: 0, failed: Vec::new(), notes: Vec::new(), error: None })
    }

    /// Writes one record. A write error is kept and returned by [`Report::finish`].
    pub fn emit(&mut self, record: Record) {
        self.total += 1;
        if !record.pass {
            self.failed.push(record.name.clone());
        }
        if self.error.is_none() {
            let line = serde_json::to_string(&record).expect("serializable");
            if let Err(e) = writeln!(self.out, "{line}") {
                self.error = Some(e);
            }
        }
    }

    /// Free-form remark carried in the footer, such as a skipped scope.
    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn passed(&self) -> bool {
        self.failed.is_empty()
    }

    /// Writes the footer and the human summary; returns the overall status.
    pub fn finish(mut self) -> io::Result<bool> {
        if let Some(e) = self.error.take() {
            return Err(e);
        }
        let pass = self.passed();
        let footer = json!({
            "status": if pass { "pass" } else { "fail" },
            "records": self.total,
            "failed": self.failed.len(),
            "notes": self.notes,
        });
        writeln!(self.out, "{footer}")?;
        self.out.flush()?;
        eprintln!("{}: {} checks, {} failed", self.command, self.total, self.failed.len());
        for name in self.failed.iter().take(10) {
            eprintln!("  failed: {name}");
        }
        if self.failed.len() > 10 {
            eprintln!("  ... and {} more", self.failed.len() - 10);
        }
        for note in &self.notes {
            eprintln!("  note: {note}");
        }
        Ok(pass)
    }
}
