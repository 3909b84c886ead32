//! Run configuration: command-line flags override the config file, which
//! overrides the `NCT_PRECISION` environment variable, which overrides the
//! built-in defaults.

use nct_core::elliptic::CurveModel;
use nct_core::grammar;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub precision: u32,
    pub prime_bound: u64,
    pub format: OutputFormat,
    pub threads: usize,
    pub extra_curves: Vec<CurveModel>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision: 128,
            prime_bound: 100,
            format: OutputFormat::Json,
            threads: 1,
            extra_curves: Vec::new(),
        }
    }
}

pub struct ConfigFile {
    pub precision: Option<u32>,
    pub prime_bound: Option<u64>,
    pub output_format: Option<OutputFormat>,
    pub extra_curves: Vec<CurveModel>,
}

/// Line-oriented `key = value` file; `#` starts a comment. Keys:
/// `precision`, `prime_bound`, `output_format`, `extra_curve` (repeatable).
pub fn parse_config_file(path: &Path) -> Result<ConfigFile, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let mut out = ConfigFile {
        precision: None,
        prime_bound: None,
        output_format: None,
        extra_curves: Vec::new(),
    };
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key = value", lineno + 1))?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "precision" => {
                out.precision = Some(
                    value
                        .parse()
                        .map_err(|_| format!("config line {}: bad precision", lineno + 1))?,
                )
            }
            "prime_bound" => {
                out.prime_bound = Some(
                    value
                        .parse()
                        .map_err(|_| format!("config line {}: bad prime_bound", lineno + 1))?,
                )
            }
            "output_format" => {
                out.output_format = Some(match value {
                    "json" => OutputFormat::Json,
                    "csv" => OutputFormat::Csv,
                    "text" => OutputFormat::Text,
                    other => {
                        return Err(format!(
                            "config line {}: unknown output_format `{other}`",
                            lineno + 1
                        ))
                    }
                })
            }
            "extra_curve" => {
                let model = grammar::parse_curve_model(value)
                    .map_err(|e| format!("config line {}: {e}", lineno + 1))?;
                out.extra_curves.push(model);
            }
            other => return Err(format!("config line {}: unknown key `{other}`", lineno + 1)),
        }
    }
    Ok(out)
}

/// Resolves the effective configuration.
pub fn resolve(
    flag_precision: Option<u32>,
    flag_prime_bound: Option<u64>,
    flag_format: Option<OutputFormat>,
    flag_threads: Option<usize>,
    file: Option<ConfigFile>,
) -> Result<RunConfig, String> {
    let mut cfg = RunConfig::default();
    if let Ok(env_prec) = std::env::var("NCT_PRECISION") {
        cfg.precision = env_prec
            .parse()
            .map_err(|_| format!("NCT_PRECISION is not a number: `{env_prec}`"))?;
    }
    if let Some(f) = file {
        if let Some(p) = f.precision {
            cfg.precision = p;
        }
        if let Some(b) = f.prime_bound {
            cfg.prime_bound = b;
        }
        if let Some(fmt) = f.output_format {
            cfg.format = fmt;
        }
        cfg.extra_curves = f.extra_curves;
    }
    if let Some(p) = flag_precision {
        cfg.precision = p;
    }
    if let Some(b) = flag_prime_bound {
        cfg.prime_bound = b;
    }
    if let Some(f) = flag_format {
        cfg.format = f;
    }
    if let Some(t) = flag_threads {
        cfg.threads = t;
    }
    if cfg.precision < 64 {
        return Err(format!("precision must be >= 64, got {}", cfg.precision));
    }
    if cfg.prime_bound < 2 {
        return Err(format!("prime bound must be >= 2, got {}", cfg.prime_bound));
    }
    if cfg.threads < 1 {
        return Err("thread count must be >= 1".into());
    }
    Ok(cfg)
}
