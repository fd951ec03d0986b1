//! Configuration plumbing: a plain key=value config file, flag-over-file
//! precedence, and the error-to-exit-code mapping.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use bbm_core::{Error as CoreError, KernelKind, ProcessParams};

/// CLI failure with its process exit code: 2 for configuration problems,
/// 3 for numerical failures, 1 for I/O.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numeric(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 1,
        }
    }

    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Numeric(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "io error: {m}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Domain(_) | CoreError::Shape(_) => CliError::Config(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Keys accepted in a config file; anything else is rejected as a typo.
const KNOWN_KEYS: &[&str] = &[
    "alpha",
    "beta",
    "kernel",
    "level",
    "seed",
    "paths",
    "p",
    "gamma",
    "gamma-offsets",
    "eps",
    "holder-gamma",
    "truncations",
    "jitter",
    "format",
    "out",
];

/// Parsed key=value config file (lower precedence than flags).
#[derive(Debug, Default)]
pub struct FileConfig {
    entries: HashMap<String, String>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
        let mut entries = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::config(format!(
                    "{}:{}: expected key=value, got `{line}`",
                    path.display(),
                    lineno + 1
                )));
            };
            let key = key.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(CliError::config(format!(
                    "{}:{}: unknown key `{key}`",
                    path.display(),
                    lineno + 1
                )));
            }
            entries.insert(key, value.trim().to_string());
        }
        Ok(FileConfig { entries })
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|s| s.as_str())
    }

    /// Parse the file entry for `key`, if present.
    pub fn get<T: FromStr>(&self, key: &str) -> CliResult<Option<T>>
    where
        T::Err: fmt::Display,
    {
        match self.raw(key) {
            None => Ok(None),
            Some(s) => s.parse::<T>().map(Some).map_err(|e| {
                CliError::config(format!("config key `{key}`: cannot parse `{s}`: {e}"))
            }),
        }
    }
}

/// flag > config file > default; error when absent everywhere.
pub fn resolve<T: FromStr + Clone>(
    flag: Option<T>,
    file: &FileConfig,
    key: &str,
    default: Option<T>,
) -> CliResult<T>
where
    T::Err: fmt::Display,
{
    if let Some(v) = flag {
        return Ok(v);
    }
    if let Some(v) = file.get::<T>(key)? {
        return Ok(v);
    }
    default.ok_or_else(|| CliError::config(format!("missing required parameter `{key}`")))
}

/// Resolve (alpha, beta, kernel) into validated process parameters.
/// The fractional and sub-fractional kernels default β to 1.
pub fn resolve_params(
    alpha: Option<f64>,
    beta: Option<f64>,
    kernel: Option<String>,
    file: &FileConfig,
) -> CliResult<ProcessParams> {
    let kernel_name = resolve(
        kernel,
        file,
        "kernel",
        Some("bifractional".to_string()),
    )?;
    let kind: KernelKind = kernel_name.parse().map_err(CliError::from)?;
    let alpha = resolve(alpha, file, "alpha", None)?;
    let beta_default = match kind {
        KernelKind::Bifractional => None,
        _ => Some(1.0),
    };
    let beta = resolve(beta, file, "beta", beta_default)?;
    ProcessParams::new(alpha, beta, kind).map_err(CliError::from)
}

/// Comma-separated list of strictly positive integers.
pub fn parse_truncations(s: &str) -> CliResult<Vec<usize>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|e| CliError::config(format!("bad truncation `{part}`: {e}")))
        })
        .collect()
}

/// Comma-separated list of offsets.
pub fn parse_offsets(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|e| CliError::config(format!("bad offset `{part}`: {e}")))
        })
        .collect()
}

/// Default truncation schedule: powers of two doubling from 2^{J−4}
/// (at least 1) up to the full basis 2^J.
pub fn default_truncations(level: u32) -> Vec<usize> {
    let full = 1usize << level;
    let mut n = 1usize << level.saturating_sub(4);
    let mut out = Vec::new();
    while n < full {
        out.push(n);
        n *= 2;
    }
    out.push(full);
    out
}

/// The grid-level cap that keeps Gram factorization desk-scale; beyond it
/// `--allow-large` is required.
pub const LEVEL_CAP: u32 = 13;

pub fn check_level_cap(level: u32, allow_large: bool) -> CliResult<()> {
    if level > LEVEL_CAP && !allow_large {
        return Err(CliError::config(format!(
            "level {level} exceeds the cap {LEVEL_CAP}; pass --allow-large to override"
        )));
    }
    Ok(())
}
