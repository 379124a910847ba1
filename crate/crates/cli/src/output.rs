use serde_json::Value;
use std::io::{self, Write};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] hyperlocal::Error),
    #[error("{0}")]
    Input(String),
    #[error("assertion failed: {0}")]
    Assertion(String),
    #[error("io error: {0}")]
    Io(#[from] io::Error),
    #[error("cannot serialize record: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(hyperlocal::Error::StaleFlow) | CliError::Assertion(_) | CliError::Json(_) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Writes one JSON record as a line on stdout.
/// A closed stdout (e.g. piped into `head`) ends the process quietly.
pub fn emit(record: &Value) -> CliResult<()> {
    let mut line = serde_json::to_string(record)?;
    line.push('\n');
    match io::stdout().lock().write_all(line.as_bytes()) {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => std::process::exit(0),
        r => Ok(r?),
    }
}

/// Plain aligned table for the human-readable summary.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn render(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.len()).collect();
        for row in &self.rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let line = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        let mut out = line(&self.header);
        out.push('\n');
        out.push_str(&"-".repeat(widths.iter().sum::<usize>() + 2 * widths.len().saturating_sub(1)));
        for row in &self.rows {
            out.push('\n');
            out.push_str(&line(row));
        }
        out
    }

    pub fn print(&self, quiet: bool) {
        if !quiet {
            eprintln!("{}", self.render());
        }
    }
}

pub fn f3(x: f64) -> String {
    format!("{x:.3}")
}
