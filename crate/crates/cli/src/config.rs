use std::fmt;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use quasitile::golden::GoldenRat;
use quasitile::window::Shift;
use serde::Deserialize;

use crate::EdgeRuleArg;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Off,
}

/// Values that may come from a TOML file; command-line flags take precedence.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub radius: Option<f64>,
    pub shift: Option<String>,
    pub axis: Option<usize>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
    pub edge_rule: Option<EdgeRuleArg>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::io(format!("reading {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::usage(format!("config {}: {e}", path.display())))
    }
}

/// Parses `a1,b1,d1,a2,b2,d2,a3,b3,d3` into the shift with components `(aᵢ+bᵢτ)/dᵢ`.
pub fn parse_shift(s: &str) -> Result<Shift, CliError> {
    let nums: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::usage(format!("shift {s:?}: {e}")))?;
    let [a1, b1, d1, a2, b2, d2, a3, b3, d3] = nums[..] else {
        return Err(CliError::usage(format!("shift needs 9 integers, got {}", nums.len())));
    };
    let c = |a, b, d| {
        GoldenRat::new((a, b).into(), d).map_err(|e| CliError::usage(format!("shift component: {e}")))
    };
    Ok(Shift::from_components([c(a1, b1, d1)?, c(a2, b2, d2)?, c(a3, b3, d3)?]))
}

pub fn format_shift(s: &Shift) -> String {
    s.components()
        .iter()
        .map(|c| {
            let n = c.numer();
            format!("{},{},{}", n.a, n.b, c.denom())
        })
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Verification,
    Usage,
    Io,
}

#[derive(Debug)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn usage(m: impl Into<String>) -> CliError {
        CliError { kind: ErrorKind::Usage, message: m.into() }
    }

    pub fn io(m: impl Into<String>) -> CliError {
        CliError { kind: ErrorKind::Io, message: m.into() }
    }

    pub fn verification(m: impl Into<String>) -> CliError {
        CliError { kind: ErrorKind::Verification, message: m.into() }
    }

    pub fn exit_code(&self) -> u8 {
        match self.kind {
            ErrorKind::Verification => 1,
            ErrorKind::Usage => 2,
            ErrorKind::Io => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}
