//! Deterministic file emission: CSV/JSON tables with 17-significant-digit
//! floats, the reproducibility manifest, and the text summary.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::config::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutFormat {
    Csv,
    Json,
}

impl OutFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            OutFormat::Csv => "csv",
            OutFormat::Json => "json",
        }
    }
}

impl FromStr for OutFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(OutFormat::Csv),
            "json" => Ok(OutFormat::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

/// One table cell; floats are rendered with 17 significant digits.
#[derive(Debug, Clone)]
pub enum Cell {
    U(u64),
    F(f64),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::U(v) => v.to_string(),
            Cell::F(v) => format_sig17(*v),
        }
    }

    fn json(&self) -> CliResult<serde_json::Value> {
        Ok(match self {
            Cell::U(v) => serde_json::Value::from(*v),
            Cell::F(v) => serde_json::Number::from_f64(*v)
                .map(serde_json::Value::Number)
                .ok_or_else(|| {
                    CliError::Numeric(format!("non-finite value {v} in output table"))
                })?,
        })
    }
}

/// 17 significant digits in scientific notation, enough to round-trip f64.
pub fn format_sig17(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug)]
pub struct Table {
    pub name: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &'static str, columns: Vec<&'static str>) -> Self {
        Table {
            name,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Serialize)]
struct JsonTable<'a> {
    columns: &'a [&'static str],
    rows: Vec<Vec<serde_json::Value>>,
}

/// Write one table into `dir` as `<name>.csv` or `<name>.json`.
pub fn write_table(dir: &Path, table: &Table, format: OutFormat) -> CliResult<PathBuf> {
    match format {
        OutFormat::Csv => {
            let path = dir.join(format!("{}.csv", table.name));
            let mut w = csv::Writer::from_path(&path)?;
            w.write_record(&table.columns)?;
            for row in &table.rows {
                w.write_record(row.iter().map(|c| c.render()))?;
            }
            w.flush()?;
            Ok(path)
        }
        OutFormat::Json => {
            let path = dir.join(format!("{}.json", table.name));
            let rows = table
                .rows
                .iter()
                .map(|row| row.iter().map(|c| c.json()).collect())
                .collect::<CliResult<Vec<Vec<_>>>>()?;
            let doc = JsonTable {
                columns: &table.columns,
                rows,
            };
            std::fs::write(&path, serde_json::to_string_pretty(&doc)? + "\n")?;
            Ok(path)
        }
    }
}

/// Everything needed to reproduce a run. Field order is the serialized key
/// order. Execution plumbing (`--threads`, `--out`, `--allow-large`) is
/// deliberately excluded: it must not influence output bytes.
#[derive(Debug, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub kernel: String,
    pub alpha: f64,
    pub beta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paths: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_offsets: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holder_gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncations: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jitter: Option<bool>,
    pub format: &'static str,
}

impl Manifest {
    pub fn new(command: &'static str, params: &bbm_core::ProcessParams, format: OutFormat) -> Self {
        Manifest {
            tool: "bbm",
            version: env!("CARGO_PKG_VERSION"),
            command,
            kernel: params.kind().as_str().to_string(),
            alpha: params.alpha(),
            beta: params.beta(),
            level: None,
            paths: None,
            seed: None,
            p: None,
            gamma: None,
            gamma_offsets: None,
            epsilon: None,
            holder_gamma: None,
            truncations: None,
            jitter: None,
            format: format.as_str(),
        }
    }

    pub fn write(&self, dir: &Path) -> CliResult<()> {
        let path = dir.join("manifest.json");
        std::fs::write(&path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }
}

/// Collects summary lines, echoes them to stdout, and lands them in
/// `summary.txt`.
#[derive(Debug, Default)]
pub struct Summary {
    lines: Vec<String>,
}

impl Summary {
    pub fn new() -> Self {
        Summary::default()
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    /// A pass/fail check line. Reported, not fatal: a FAIL is a result, so
    /// the process still exits 0 when the run itself completed.
    pub fn check(&mut self, name: &str, pass: bool, detail: String) {
        let verdict = if pass { "PASS" } else { "FAIL" };
        self.lines.push(format!("{verdict} {name}: {detail}"));
    }

    pub fn finish(self, dir: &Path) -> CliResult<()> {
        let mut text = String::new();
        for l in &self.lines {
            println!("{l}");
            let _ = writeln!(text, "{l}");
        }
        std::fs::write(dir.join("summary.txt"), text)?;
        Ok(())
    }
}
