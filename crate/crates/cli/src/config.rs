//! Run configuration: flags over config-file keys over defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Serialize;
use zonal::exactalg::{parse_rational, rational_string, ModelParams, Rational};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Values given on the command line; `None` falls through to the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub config: Option<PathBuf>,
    pub lambda: Option<String>,
    pub kappa: Option<u32>,
    pub zone: Option<u32>,
    pub q: Option<f64>,
    pub tol: Option<f64>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub p_max: Option<u32>,
    pub m_max: Option<u32>,
    pub k: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    #[serde(serialize_with = "as_rational_string")]
    pub lambda: Rational,
    pub kappa: u32,
    pub zone: u32,
    #[serde(rename = "Q")]
    pub q: f64,
    pub p_max: Option<u32>,
    pub m_max: Option<u32>,
    #[serde(rename = "K")]
    pub k: Option<u64>,
    pub tol: f64,
    pub format: Format,
    /// Where the report goes; not part of the report itself.
    #[serde(skip)]
    pub output_path: Option<PathBuf>,
}

fn as_rational_string<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(r))
}

const KEYS: [&str; 10] = ["lambda", "kappa", "zone", "Q", "p_max", "m_max", "K", "tol", "format", "output_path"];

/// Parse a flat `key = value` file. `#` starts a comment line.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (index, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Usage(format!("config line {}: expected key=value, got {line:?}", index + 1)));
        };
        let key = key.trim();
        let key = if key == "q" { "Q" } else { key };
        if !KEYS.contains(&key) {
            return Err(CliError::Usage(format!(
                "config line {}: unknown key {key:?} (known: {})",
                index + 1,
                KEYS.join(", ")
            )));
        }
        if map.insert(key.to_string(), value.trim().to_string()).is_some() {
            return Err(CliError::Usage(format!("config line {}: duplicate key {key:?}", index + 1)));
        }
    }
    Ok(map)
}

fn read_config(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config file {}: {e}", path.display())))?;
    parse_config_text(&text)
}

fn parse_key<T: std::str::FromStr>(file: &BTreeMap<String, String>, key: &str) -> Result<Option<T>, CliError> {
    file.get(key)
        .map(|v| {
            v.parse()
                .map_err(|_| CliError::Usage(format!("config key {key}: cannot parse {v:?}")))
        })
        .transpose()
}

impl RunConfig {
    pub fn resolve(flags: Overrides) -> Result<Self, CliError> {
        let file = match &flags.config {
            Some(path) => read_config(path)?,
            None => BTreeMap::new(),
        };
        let lambda_text = flags
            .lambda
            .or_else(|| file.get("lambda").cloned())
            .unwrap_or_else(|| "1".into());
        let lambda = parse_rational(&lambda_text)
            .ok_or_else(|| CliError::Usage(format!("lambda: cannot parse {lambda_text:?} as a rational")))?;
        let format = match (flags.format, file.get("format")) {
            (Some(f), _) => f,
            (None, Some(text)) => Format::from_str(text, true)
                .map_err(|_| CliError::Usage(format!("config key format: expected csv or json, got {text:?}")))?,
            (None, None) => Format::Csv,
        };
        let config = Self {
            lambda,
            kappa: flags.kappa.or(parse_key(&file, "kappa")?).unwrap_or(1),
            zone: flags.zone.or(parse_key(&file, "zone")?).unwrap_or(0),
            q: flags.q.or(parse_key(&file, "Q")?).unwrap_or(1.0),
            p_max: flags.p_max.or(parse_key(&file, "p_max")?),
            m_max: flags.m_max.or(parse_key(&file, "m_max")?),
            k: flags.k.or(parse_key(&file, "K")?),
            tol: flags.tol.or(parse_key(&file, "tol")?).unwrap_or(1e-8),
            format,
            output_path: flags.output.or_else(|| file.get("output_path").map(PathBuf::from)),
        };
        config.model_params()?;
        if !(config.tol > 0.0 && config.tol.is_finite()) {
            return Err(CliError::Usage(format!("tol must be finite and > 0, got {}", config.tol)));
        }
        if config.k == Some(0) {
            return Err(CliError::Usage("K must be >= 1".into()));
        }
        Ok(config)
    }

    pub fn model_params(&self) -> Result<ModelParams, CliError> {
        ModelParams::new(self.lambda.clone())
            .and_then(|p| p.with_kappa(self.kappa))
            .and_then(|p| p.with_coulomb(self.q))
            .map_err(|e| CliError::Usage(e.to_string()))
    }

    pub fn require_planar(&self, command: &str) -> Result<(), CliError> {
        if self.kappa != 1 {
            return Err(CliError::Usage(format!("{command} works on a single particle; got --kappa {}", self.kappa)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = RunConfig::resolve(Overrides::default()).unwrap();
        assert_eq!(rational_string(&c.lambda), "1");
        assert_eq!((c.kappa, c.zone, c.q, c.tol), (1, 0, 1.0, 1e-8));
        assert_eq!(c.format, Format::Csv);
    }

    #[test]
    fn config_text() {
        let map = parse_config_text("# comment\nlambda = 1/2\n\nq=2\nformat=json\n").unwrap();
        assert_eq!(map["lambda"], "1/2");
        assert_eq!(map["Q"], "2");
        assert!(parse_config_text("bogus=1").is_err());
        assert!(parse_config_text("lambda").is_err());
        assert!(parse_config_text("tol=1\ntol=2").is_err());
    }

    #[test]
    fn invalid_values_are_usage_errors() {
        let bad = |o: Overrides| matches!(RunConfig::resolve(o), Err(CliError::Usage(_)));
        assert!(bad(Overrides { lambda: Some("-1".into()), ..Default::default() }));
        assert!(bad(Overrides { lambda: Some("x".into()), ..Default::default() }));
        assert!(bad(Overrides { kappa: Some(0), ..Default::default() }));
        assert!(bad(Overrides { tol: Some(0.0), ..Default::default() }));
        assert!(bad(Overrides { q: Some(f64::NAN), ..Default::default() }));
    }
}
