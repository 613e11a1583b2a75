//! Plain-text run configuration: one `key = value` per line, `#` comments,
//! repeatable keys for grid dimensions.
//!
//! ```text
//! model = beta
//! prior = 1 3          # repeatable: one grid entry per line
//! c = 0.5
//! c = 3
//! a = 0.5
//! epsilon = 0.5        # needed by divergence / calibration analyses
//! class = epsilon      # epsilon | geometric; defaults to both
//! t = 11               # inline Bernoulli stats (with n)
//! n = 20
//! seed = 20260810
//! draws = 1000000
//! ```
//!
//! Data can instead come from a delimited file: `data = path.csv` with
//! `column = name` plus either `success = label` (binary), `levels = a,b,c`
//! (categorical), or neither (numeric column).

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;

use priorcurve_core::{ContaminationClass, Family, PriorSpec, SufficientStats};

pub const DEFAULT_SEED: u64 = 20_260_810;
pub const DEFAULT_DRAWS: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Analysis {
    Curvature,
    Divergence,
    Calibration,
}

impl Analysis {
    pub fn name(self) -> &'static str {
        match self {
            Analysis::Curvature => "curvature",
            Analysis::Divergence => "divergence",
            Analysis::Calibration => "calibration",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Markdown,
    Json,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "markdown" | "md" => Ok(OutputFormat::Markdown),
            "json" => Ok(OutputFormat::Json),
            other => Err(ConfigError::new(format!(
                "unknown format '{other}' (expected csv, markdown, or json)"
            ))),
        }
    }
}

/// Where the sufficient statistics come from.
#[derive(Debug, Clone)]
pub enum DataSource {
    Inline(SufficientStats),
    File { path: PathBuf, column: String, mapping: ColumnMapping },
}

/// How a data-file column is summarized.
#[derive(Debug, Clone)]
pub enum ColumnMapping {
    /// Rows equal to `success` count as 1, everything else as 0.
    Binary { success: String },
    /// Category counts in the declared level order.
    Categorical { levels: Vec<String> },
    /// Sample mean of a numeric column.
    Numeric,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub model: Family,
    pub priors: Vec<PriorSpec>,
    pub scales: Vec<f64>,
    pub orders: Vec<f64>,
    pub epsilons: Vec<f64>,
    pub classes: Vec<ContaminationClass>,
    pub analyses: Vec<Analysis>,
    pub draws: u64,
    pub seed: u64,
    pub threads: usize,
    pub format: OutputFormat,
    pub data: DataSource,
}

#[derive(Debug, thiserror::Error)]
#[error("config error: {message}")]
pub struct ConfigError {
    message: String,
}

impl ConfigError {
    fn new(message: impl fmt::Display) -> Self {
        Self { message: message.to_string() }
    }

    pub fn from_message(message: impl fmt::Display) -> Self {
        Self::new(message)
    }

    fn at(line: usize, message: impl fmt::Display) -> Self {
        Self { message: format!("line {line}: {message}") }
    }
}

#[derive(Default)]
struct RawConfig {
    model: Option<Family>,
    priors: Vec<Vec<f64>>,
    scales: Vec<f64>,
    orders: Vec<f64>,
    epsilons: Vec<f64>,
    classes: Vec<ContaminationClass>,
    analyses: Vec<Analysis>,
    draws: Option<u64>,
    seed: Option<u64>,
    threads: Option<usize>,
    format: Option<OutputFormat>,
    successes: Option<u64>,
    trials: Option<u64>,
    counts: Option<Vec<u64>>,
    mean: Option<f64>,
    data: Option<PathBuf>,
    column: Option<String>,
    success_label: Option<String>,
    levels: Option<Vec<String>>,
}

fn parse_f64(line: usize, key: &str, value: &str) -> Result<f64, ConfigError> {
    value
        .parse::<f64>()
        .map_err(|_| ConfigError::at(line, format!("{key} expects a number, got '{value}'")))
}

fn parse_u64(line: usize, key: &str, value: &str) -> Result<u64, ConfigError> {
    value
        .parse::<u64>()
        .map_err(|_| ConfigError::at(line, format!("{key} expects an integer, got '{value}'")))
}

/// Parses config text. `analyses_override`, when set by a subcommand,
/// replaces any `analysis =` lines.
pub fn parse_config(text: &str, analyses_override: Option<&[Analysis]>) -> Result<RunConfig, ConfigError> {
    let mut raw = RawConfig::default();
    for (idx, line_raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match line_raw.find('#') {
            Some(pos) => &line_raw[..pos],
            None => line_raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| ConfigError::at(line_no, "expected 'key = value'"))?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "model" => {
                raw.model = Some(match value {
                    "beta" | "bernoulli" => Family::Beta,
                    "dirichlet" | "multinomial" => Family::Dirichlet,
                    "normal" | "normal-location" => Family::NormalLocation,
                    other => {
                        return Err(ConfigError::at(
                            line_no,
                            format!("unknown model '{other}' (beta, dirichlet, or normal)"),
                        ))
                    }
                })
            }
            "prior" => {
                let params = value
                    .split_whitespace()
                    .map(|v| parse_f64(line_no, "prior", v))
                    .collect::<Result<Vec<f64>, _>>()?;
                if params.is_empty() {
                    return Err(ConfigError::at(line_no, "prior needs hyperparameters"));
                }
                raw.priors.push(params);
            }
            "c" => raw.scales.push(parse_f64(line_no, "c", value)?),
            "a" => raw.orders.push(parse_f64(line_no, "a", value)?),
            "epsilon" => raw.epsilons.push(parse_f64(line_no, "epsilon", value)?),
            "class" => raw.classes.push(match value {
                "epsilon" | "epsilon-linear" | "linear" => ContaminationClass::EpsilonLinear,
                "geometric" => ContaminationClass::Geometric,
                other => {
                    return Err(ConfigError::at(
                        line_no,
                        format!("unknown class '{other}' (epsilon or geometric)"),
                    ))
                }
            }),
            "analysis" => raw.analyses.push(match value {
                "curvature" => Analysis::Curvature,
                "divergence" => Analysis::Divergence,
                "calibration" => Analysis::Calibration,
                other => {
                    return Err(ConfigError::at(
                        line_no,
                        format!("unknown analysis '{other}' (curvature, divergence, calibration)"),
                    ))
                }
            }),
            "draws" => raw.draws = Some(parse_u64(line_no, "draws", value)?),
            "seed" => raw.seed = Some(parse_u64(line_no, "seed", value)?),
            "threads" => raw.threads = Some(parse_u64(line_no, "threads", value)? as usize),
            "format" => raw.format = Some(OutputFormat::parse(value).map_err(|e| ConfigError::at(line_no, e))?),
            "t" => raw.successes = Some(parse_u64(line_no, "t", value)?),
            "n" => raw.trials = Some(parse_u64(line_no, "n", value)?),
            "counts" => {
                let counts = value
                    .split(',')
                    .map(|v| parse_u64(line_no, "counts", v.trim()))
                    .collect::<Result<Vec<u64>, _>>()?;
                raw.counts = Some(counts);
            }
            "mean" => raw.mean = Some(parse_f64(line_no, "mean", value)?),
            "data" => raw.data = Some(PathBuf::from(value)),
            "column" => raw.column = Some(value.to_string()),
            "success" => raw.success_label = Some(value.to_string()),
            "levels" => {
                raw.levels = Some(value.split(',').map(|v| v.trim().to_string()).collect())
            }
            other => return Err(ConfigError::at(line_no, format!("unknown key '{other}'"))),
        }
    }
    finish(raw, analyses_override)
}

fn finish(raw: RawConfig, analyses_override: Option<&[Analysis]>) -> Result<RunConfig, ConfigError> {
    let model = raw.model.ok_or_else(|| ConfigError::new("missing 'model'"))?;
    if raw.priors.is_empty() {
        return Err(ConfigError::new("at least one 'prior' is required"));
    }
    let priors = raw
        .priors
        .iter()
        .map(|params| build_prior(model, params))
        .collect::<Result<Vec<_>, _>>()?;
    if raw.scales.is_empty() {
        return Err(ConfigError::new("at least one 'c' grid value is required"));
    }
    if raw.orders.is_empty() {
        return Err(ConfigError::new("at least one 'a' grid value is required"));
    }
    for &c in &raw.scales {
        if !(c.is_finite() && c > 0.0) {
            return Err(ConfigError::new(format!("c grid value {c} must be positive")));
        }
    }
    for &a in &raw.orders {
        if !(a.is_finite() && a > 0.0) {
            return Err(ConfigError::new(format!("a grid value {a} must be positive")));
        }
    }
    let classes = if raw.classes.is_empty() {
        vec![ContaminationClass::EpsilonLinear, ContaminationClass::Geometric]
    } else {
        dedup(raw.classes.clone())
    };
    let analyses = match analyses_override {
        Some(forced) => forced.to_vec(),
        None => {
            if raw.analyses.is_empty() {
                vec![Analysis::Curvature]
            } else {
                dedup(raw.analyses.clone())
            }
        }
    };
    let needs_epsilon = analyses.iter().any(|a| *a != Analysis::Curvature);
    if needs_epsilon && raw.epsilons.is_empty() {
        return Err(ConfigError::new(
            "divergence/calibration analyses need at least one 'epsilon' grid value",
        ));
    }
    for &e in &raw.epsilons {
        if !(0.0..=1.0).contains(&e) {
            return Err(ConfigError::new(format!("epsilon {e} outside [0, 1]")));
        }
    }

    let data = build_data_source(model, &raw)?;
    Ok(RunConfig {
        model,
        priors,
        scales: raw.scales,
        orders: raw.orders,
        epsilons: raw.epsilons,
        classes,
        analyses,
        draws: raw.draws.unwrap_or(DEFAULT_DRAWS),
        seed: raw.seed.unwrap_or(DEFAULT_SEED),
        threads: raw.threads.unwrap_or(0),
        format: raw.format.unwrap_or(OutputFormat::Csv),
        data,
    })
}

fn dedup<T: PartialEq>(items: Vec<T>) -> Vec<T> {
    let mut out: Vec<T> = Vec::with_capacity(items.len());
    for item in items {
        if !out.contains(&item) {
            out.push(item);
        }
    }
    out
}

fn build_prior(model: Family, params: &[f64]) -> Result<PriorSpec, ConfigError> {
    let built = match model {
        Family::Beta => {
            if params.len() != 2 {
                return Err(ConfigError::new(format!(
                    "beta prior needs 'alpha beta', got {} values",
                    params.len()
                )));
            }
            PriorSpec::beta(params[0], params[1])
        }
        Family::Dirichlet => PriorSpec::dirichlet(params.to_vec()),
        Family::NormalLocation => {
            if params.len() != 2 {
                return Err(ConfigError::new(format!(
                    "normal prior needs 'location variance', got {} values",
                    params.len()
                )));
            }
            PriorSpec::normal_location(params[0], params[1])
        }
    };
    built.map_err(ConfigError::new)
}

fn build_data_source(model: Family, raw: &RawConfig) -> Result<DataSource, ConfigError> {
    if let Some(path) = &raw.data {
        let column = raw
            .column
            .clone()
            .ok_or_else(|| ConfigError::new("'data' needs a 'column' to ingest"))?;
        let mapping = match (&raw.success_label, &raw.levels) {
            (Some(success), None) => ColumnMapping::Binary { success: success.clone() },
            (None, Some(levels)) => {
                let unique: BTreeSet<&String> = levels.iter().collect();
                if unique.len() != levels.len() {
                    return Err(ConfigError::new("'levels' contains duplicates"));
                }
                ColumnMapping::Categorical { levels: levels.clone() }
            }
            (None, None) => ColumnMapping::Numeric,
            (Some(_), Some(_)) => {
                return Err(ConfigError::new("'success' and 'levels' are mutually exclusive"))
            }
        };
        let compatible = matches!(
            (model, &mapping),
            (Family::Beta, ColumnMapping::Binary { .. })
                | (Family::Dirichlet, ColumnMapping::Categorical { .. })
                | (Family::NormalLocation, ColumnMapping::Numeric)
        );
        if !compatible {
            return Err(ConfigError::new(
                "column mapping does not match the model family \
                 (binary -> beta, levels -> dirichlet, numeric -> normal)",
            ));
        }
        return Ok(DataSource::File { path: path.clone(), column, mapping });
    }

    let stats = match model {
        Family::Beta => {
            let t = raw.successes.ok_or_else(|| ConfigError::new("beta model needs 't' (or 'data')"))?;
            let n = raw.trials.ok_or_else(|| ConfigError::new("beta model needs 'n'"))?;
            SufficientStats::bernoulli(t, n)
        }
        Family::Dirichlet => {
            let counts = raw
                .counts
                .clone()
                .ok_or_else(|| ConfigError::new("dirichlet model needs 'counts' (or 'data')"))?;
            SufficientStats::multinomial(counts)
        }
        Family::NormalLocation => {
            let mean = raw.mean.ok_or_else(|| ConfigError::new("normal model needs 'mean' (or 'data')"))?;
            let n = raw.trials.ok_or_else(|| ConfigError::new("normal model needs 'n'"))?;
            SufficientStats::normal(mean, n)
        }
    }
    .map_err(ConfigError::new)?;
    Ok(DataSource::Inline(stats))
}
