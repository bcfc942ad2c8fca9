//! Rendering of command results as JSON, CSV or aligned text.

use std::io::Write;

use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub struct Section {
    pub title: Option<String>,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Section {
    pub fn new(title: Option<String>, headers: &[&str]) -> Self {
        Self {
            title,
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// One command's output. JSON wraps `result` in an envelope carrying the
/// command name and the seed (null for deterministic commands).
pub struct Report {
    pub command: &'static str,
    pub seed: Option<u64>,
    pub result: Value,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn render(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Json => {
                let doc = json!({
                    "command": self.command,
                    "seed": self.seed,
                    "result": self.result,
                });
                serde_json::to_writer_pretty(&mut *out, &doc)?;
                writeln!(out)
            }
            Format::Csv => self.render_csv(out),
            Format::Text => self.render_text(out),
        }
    }

    fn render_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        if let Some(seed) = self.seed {
            writeln!(out, "# seed={seed}")?;
        }
        for (i, s) in self.sections.iter().enumerate() {
            if i > 0 {
                writeln!(out)?;
            }
            let mut w = csv::WriterBuilder::new()
                .flexible(true)
                .from_writer(Vec::new());
            if !s.headers.is_empty() {
                w.write_record(&s.headers)?;
            }
            for row in &s.rows {
                w.write_record(row)?;
            }
            let bytes = w.into_inner().map_err(|e| e.into_error())?;
            out.write_all(&bytes)?;
        }
        Ok(())
    }

    fn render_text(&self, out: &mut dyn Write) -> std::io::Result<()> {
        if let Some(seed) = self.seed {
            writeln!(out, "seed: {seed}")?;
        }
        for (i, s) in self.sections.iter().enumerate() {
            if i > 0 {
                writeln!(out)?;
            }
            if let Some(t) = &s.title {
                writeln!(out, "{t}")?;
            }
            let ncols = s
                .rows
                .iter()
                .map(Vec::len)
                .chain([s.headers.len()])
                .max()
                .unwrap_or(0);
            let mut widths = vec![0; ncols];
            for row in std::iter::once(&s.headers).chain(&s.rows) {
                for (c, cell) in row.iter().enumerate() {
                    widths[c] = widths[c].max(cell.chars().count());
                }
            }
            let line = |row: &[String]| {
                let cells: Vec<String> = row
                    .iter()
                    .enumerate()
                    .map(|(c, cell)| {
                        let pad = widths[c] - cell.chars().count();
                        format!("{cell}{}", " ".repeat(pad))
                    })
                    .collect();
                cells.join("  ").trim_end().to_string()
            };
            if !s.headers.is_empty() {
                writeln!(out, "{}", line(&s.headers))?;
            }
            for row in &s.rows {
                writeln!(out, "{}", line(row))?;
            }
        }
        Ok(())
    }
}
