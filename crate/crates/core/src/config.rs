//! Run configuration for the command-line front end.
//!
//! The config file is flat `key = value` text with `#` comments. Keys are the
//! [`Settings`] field names, `format`, `output`, and the subcommand flag names
//! with dashes written as underscores (`p`, `n`, `l`, `k`, `lambda`,
//! `section`, `p_min`, ..., `p_list`). Command-line flags win.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::settings::Settings;

/// Environment variable naming the config file.
pub const CONFIG_ENV: &str = "LEL_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// Keys accepted for subcommand flags.
pub const FLAG_KEYS: [&str; 14] = [
    "p",
    "n",
    "l",
    "k",
    "lambda",
    "section",
    "p_min",
    "p_max",
    "p_steps",
    "lambda_min",
    "lambda_max",
    "lambda_steps",
    "regime",
    "p_list",
];

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunConfig {
    pub settings: Settings,
    pub format: Format,
    pub output: Option<PathBuf>,
    /// Config values for subcommand flags, by key.
    pub flags: BTreeMap<String, String>,
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("config key `{key}`: cannot parse `{value}`"))
}

impl RunConfig {
    /// Parse config text on top of the defaults.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut cfg = RunConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected `key = value`", lineno + 1))?;
            cfg.set(key.trim(), value.trim())
                .map_err(|e| format!("line {}: {e}", lineno + 1))?;
        }
        cfg.settings.validate()?;
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let s = &mut self.settings;
        match key {
            "ivp_abs" => s.ivp_abs = parse_num(key, value)?,
            "ivp_rel" => s.ivp_rel = parse_num(key, value)?,
            "quad_rel" => s.quad_rel = parse_num(key, value)?,
            "eig_tol" => s.eig_tol = parse_num(key, value)?,
            "method_agreement" => s.method_agreement = parse_num(key, value)?,
            "marginal_band" => s.marginal_band = parse_num(key, value)?,
            "zero_tol" => s.zero_tol = parse_num(key, value)?,
            "solution_nodes" => s.solution_nodes = parse_num(key, value)?,
            "fd_nodes" => s.fd_nodes = parse_num(key, value)?,
            "peak_window" => s.peak_window = parse_num(key, value)?,
            "peak_samples" => s.peak_samples = parse_num(key, value)?,
            "format" => self.format = value.parse()?,
            "output" => self.output = Some(PathBuf::from(value)),
            k if FLAG_KEYS.contains(&k) => {
                self.flags.insert(k.to_string(), value.to_string());
            }
            other => return Err(format!("unknown config key `{other}`")),
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        Self::parse(&text)
    }

    /// Config named by `LEL_CONFIG`, or the defaults when it is unset.
    pub fn from_env() -> Result<Self, String> {
        match std::env::var_os(CONFIG_ENV) {
            Some(path) if !path.is_empty() => Self::load(Path::new(&path)),
            _ => Ok(Self::default()),
        }
    }

    /// Typed config value for a subcommand flag.
    pub fn flag<T: FromStr>(&self, key: &str) -> Result<Option<T>, String> {
        self.flags
            .get(key)
            .map(|v| parse_num(key, v))
            .transpose()
    }
}
