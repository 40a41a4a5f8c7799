//! Run configuration: flags > environment > config file > defaults.
//!
//! The config file is flat `key = value` text; `#` starts a comment.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use alvero_core::groebner::{MonomialOrder, DEFAULT_EXPONENT_BOUND, MAX_SUPPORTED_DEGREE};
use alvero_core::realroots::{DEFAULT_CLUSTER_TOL, DEFAULT_GAP_THRESHOLD};
use alvero_core::budget::DEFAULT_STEP_BUDGET;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub max_degree: usize,
    pub order: MonomialOrder,
    pub budget: u64,
    /// `None` disables the cache.
    pub cache_dir: Option<PathBuf>,
    pub cluster_tol: f64,
    pub residual_target: f64,
    pub gap_threshold: f64,
    pub interlace_tol: f64,
    /// Shared-root tolerance for the almost-counterexample checks.
    pub root_tol: f64,
    pub seed: u64,
    pub restarts: usize,
    pub exponent_bound: u32,
    pub jobs: Option<usize>,
    /// Unset means the command's own default (JSON for `ace`, text otherwise).
    pub format: Option<Format>,
    pub certificates: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_degree: MAX_SUPPORTED_DEGREE,
            order: MonomialOrder::grevlex(),
            budget: DEFAULT_STEP_BUDGET,
            cache_dir: Some(PathBuf::from(".alvero-cache")),
            cluster_tol: DEFAULT_CLUSTER_TOL,
            residual_target: 1e-9,
            gap_threshold: DEFAULT_GAP_THRESHOLD,
            interlace_tol: 1e-8,
            root_tol: 1e-6,
            seed: 0,
            restarts: 16,
            exponent_bound: DEFAULT_EXPONENT_BOUND,
            jobs: None,
            format: None,
            certificates: false,
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value.parse().map_err(|_| CliError::Usage(format!("config key `{key}`: cannot parse `{value}`")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool, CliError> {
    match value {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(CliError::Usage(format!("config key `{key}`: expected a boolean, got `{value}`"))),
    }
}

impl RunConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "max_degree" => self.max_degree = parse(key, value)?,
            "order" => {
                self.order = MonomialOrder::from_str(value).map_err(|e| CliError::Usage(format!("config key `order`: {e}")))?
            }
            "budget" => self.budget = parse(key, value)?,
            "cache_dir" => self.cache_dir = if value == "none" { None } else { Some(PathBuf::from(value)) },
            "cluster_tol" => self.cluster_tol = parse(key, value)?,
            "residual_target" => self.residual_target = parse(key, value)?,
            "gap_threshold" => self.gap_threshold = parse(key, value)?,
            "interlace_tol" => self.interlace_tol = parse(key, value)?,
            "root_tol" => self.root_tol = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "restarts" => self.restarts = parse(key, value)?,
            "exponent_bound" => self.exponent_bound = parse(key, value)?,
            "jobs" => self.jobs = Some(parse(key, value)?),
            "format" => {
                self.format = match value {
                    "text" => Some(Format::Text),
                    "json" => Some(Format::Json),
                    _ => return Err(CliError::Usage(format!("config key `format`: expected text or json, got `{value}`"))),
                }
            }
            "certificates" => self.certificates = parse_bool(key, value)?,
            _ => return Err(CliError::Usage(format!("unknown config key `{key}`"))),
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config file {}: {e}", path.display())))?;
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("{}:{}: expected key = value", path.display(), n + 1)))?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        for (name, v) in [
            ("cluster_tol", self.cluster_tol),
            ("residual_target", self.residual_target),
            ("gap_threshold", self.gap_threshold),
            ("interlace_tol", self.interlace_tol),
            ("root_tol", self.root_tol),
        ] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(CliError::Usage(format!("{name} must be a non-negative number, got {v}")));
            }
        }
        if self.max_degree == 0 || self.max_degree > MAX_SUPPORTED_DEGREE {
            return Err(CliError::Usage(format!("max_degree must lie in 1..={MAX_SUPPORTED_DEGREE}")));
        }
        if self.restarts == 0 {
            return Err(CliError::Usage("restarts must be positive".into()));
        }
        if self.jobs == Some(0) {
            return Err(CliError::Usage("jobs must be positive".into()));
        }
        Ok(())
    }

    pub fn check_degree(&self, d: usize) -> Result<(), CliError> {
        if d == 0 || d > self.max_degree {
            return Err(CliError::Usage(format!("degree {d} outside supported range 1..={}", self.max_degree)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_overrides_defaults() {
        let dir = std::env::temp_dir().join(format!("alvero-config-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("alvero.conf");
        fs::write(&path, "# comment\nbudget = 42\norder = lex\ncache_dir = none\nformat = json # trailing\n").unwrap();
        let mut c = RunConfig::default();
        c.apply_file(&path).unwrap();
        assert_eq!(c.budget, 42);
        assert_eq!(c.order.tag(), "lex");
        assert!(c.cache_dir.is_none());
        assert_eq!(c.format, Some(Format::Json));
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn rejects_bad_values() {
        let mut c = RunConfig::default();
        assert!(c.set("colour", "red").is_err());
        assert!(c.set("budget", "-1").is_err());
        c.cluster_tol = -1.0;
        assert!(c.validate().is_err());
    }
}
