//! Edge-list and weight-file reading and writing.
//!
//! Both formats are plain text with one record per line and whitespace
//! separated fields. Blank lines and lines starting with `#` are skipped.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use infcomm::{IngestReport, WeightedGraph};

use crate::error::{CliError, Result};

fn records(path: &Path, mut record: impl FnMut(usize, &[&str]) -> Result<()>) -> Result<()> {
    let file = File::open(path).map_err(|e| CliError::io(path, e))?;
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| CliError::io(path, e))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        record(i + 1, &fields)?;
    }
    Ok(())
}

fn parse_error(path: &Path, line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse { path: path.to_path_buf(), line, message: message.into() }
}

/// Reads `u v` pairs. Fields after the second are ignored, which admits
/// edge lists carrying timestamps or weights.
pub fn read_edges(path: &Path) -> Result<Vec<(String, String)>> {
    let mut edges = Vec::new();
    records(path, |line, f| match f {
        [u, v, ..] => {
            edges.push((u.to_string(), v.to_string()));
            Ok(())
        }
        _ => Err(parse_error(path, line, "expected two vertex labels")),
    })?;
    Ok(edges)
}

/// Reads `v w` pairs.
pub fn read_weights(path: &Path) -> Result<Vec<(String, f64)>> {
    let mut weights = Vec::new();
    records(path, |line, f| match f {
        [v, w] => {
            let w: f64 = w
                .parse()
                .map_err(|_| parse_error(path, line, format!("`{w}` is not a number")))?;
            weights.push((v.to_string(), w));
            Ok(())
        }
        _ => Err(parse_error(path, line, "expected a vertex label and a weight")),
    })?;
    Ok(weights)
}

pub fn load_graph(edges: &Path, weights: &Path) -> Result<(WeightedGraph, IngestReport)> {
    let e = read_edges(edges)?;
    let w = read_weights(weights)?;
    Ok(WeightedGraph::ingest(e, w)?)
}

/// Writes `label weight` lines; weights use the shortest round-tripping form.
pub fn write_weights<'a>(out: impl Write, rows: impl IntoIterator<Item = (&'a str, f64)>) -> std::io::Result<()> {
    let mut out = BufWriter::new(out);
    for (label, w) in rows {
        writeln!(out, "{label} {w:?}")?;
    }
    out.flush()
}

pub fn write_edges<'a>(out: impl Write, edges: impl IntoIterator<Item = (&'a str, &'a str)>) -> std::io::Result<()> {
    let mut out = BufWriter::new(out);
    for (u, v) in edges {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()
}

/// Opens `path` for writing, or stdout when `path` is `None` or `-`.
pub fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    match path {
        Some(p) if p != Path::new("-") => {
            let f = File::create(p).map_err(|e| CliError::io(p, e))?;
            Ok(Box::new(BufWriter::new(f)))
        }
        _ => Ok(Box::new(std::io::stdout().lock())),
    }
}
