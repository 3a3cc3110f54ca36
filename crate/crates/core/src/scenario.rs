//! Scenario files.
//!
//! A scenario is a TOML document:
//!
//! ```toml
//! name = "counterexample-natural"
//! kind = "counterexample"
//! units = "natural"            # optional, "natural" | "si"
//!
//! [params]                     # kind-specific, unknown keys rejected
//! alphas = [0.0, 0.1, [0.3, 0.4]]
//!
//! [output]                     # optional
//! format = "json"
//! path = "out/counterexample.json"
//!
//! [defaults]                   # optional overrides of crate::defaults
//! truncation_budget = 1e-12
//!
//! [sweep]                      # optional, used by `sweep`
//! param = "alpha"
//! range = "0:1.4:0.1"
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::defaults::Defaults;
use crate::pulse::PulseShape;
use crate::Complex64;

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid scenario: {0}")]
    Invalid(String),
    #[error(transparent)]
    Numeric(#[from] crate::Error),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Coherent,
    Counterexample,
    Chain,
    Spread,
    Pulse,
    Weigh,
    Separation,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    /// ħ = c = g = 1 unless overridden.
    #[default]
    Natural,
    /// CODATA ħ, c and standard gravity unless overridden.
    Si,
}

impl Units {
    pub fn label(self) -> &'static str {
        match self {
            Units::Natural => "natural",
            Units::Si => "si",
        }
    }

    pub fn hbar(self) -> f64 {
        match self {
            Units::Natural => 1.0,
            Units::Si => 1.054_571_817e-34,
        }
    }

    pub fn c(self) -> f64 {
        match self {
            Units::Natural => 1.0,
            Units::Si => 299_792_458.0,
        }
    }

    pub fn g(self) -> f64 {
        match self {
            Units::Natural => 1.0,
            Units::Si => 9.806_65,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub format: OutputFormat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

/// A parameter swept over a grid of values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub param: String,
    /// `"A:B:STEP"`, inclusive of B.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<String>,
    /// Explicit grid, used instead of `range`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
}

impl SweepSpec {
    pub fn grid(&self) -> Result<Vec<f64>, ScenarioError> {
        match (&self.range, &self.values) {
            (Some(_), Some(_)) => {
                Err(ScenarioError::Invalid(format!("sweep of `{}` gives both range and values", self.param)))
            }
            (Some(r), None) => parse_range(r),
            (None, Some(v)) if v.is_empty() => {
                Err(ScenarioError::Invalid(format!("sweep of `{}` has no values", self.param)))
            }
            (None, Some(v)) => Ok(v.clone()),
            (None, None) => Err(ScenarioError::Invalid(format!("sweep of `{}` needs a range or values", self.param))),
        }
    }
}

/// Parses `A:B:STEP` into `A, A+STEP, ..., ≤ B`.
pub fn parse_range(text: &str) -> Result<Vec<f64>, ScenarioError> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || ScenarioError::Invalid(format!("range `{text}` must be A:B:STEP"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let nums: Vec<f64> = parts.iter().map(|p| p.trim().parse::<f64>().map_err(|_| bad())).collect::<Result<_, _>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(bad());
    }
    if step <= 0.0 || stop < start {
        return Err(ScenarioError::Invalid(format!("range `{text}` is empty")));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|i| {
            // strip accumulated binary noise such as 0.30000000000000004
            let v = start + i as f64 * step;
            format!("{v:.12e}").parse().unwrap_or(v)
        })
        .collect())
}

/// The parsed scenario. `params` stays untyped here and is checked against
/// the kind-specific schema by [`ScenarioFile::typed_params`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub name: String,
    pub kind: Kind,
    #[serde(default)]
    pub units: Units,
    #[serde(default)]
    pub params: toml::Table,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
    #[serde(default)]
    pub defaults: Defaults,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
}

impl ScenarioFile {
    pub fn parse(source: &str) -> Result<Self, ScenarioError> {
        let file: ScenarioFile = toml::from_str(source).map_err(|e| ScenarioError::Parse(e.to_string()))?;
        // reject bad params up front, with a source location when possible
        file.typed_params().map_err(|e| match e {
            ScenarioError::Parse(msg) => ScenarioError::Parse(locate_key(source, &msg)),
            other => other,
        })?;
        Ok(file)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, ScenarioError> {
        let source = std::fs::read_to_string(path)
            .map_err(|source| ScenarioError::Io { path: path.display().to_string(), source })?;
        Self::parse(&source)
    }

    pub fn typed_params(&self) -> Result<Params, ScenarioError> {
        fn conv<T: serde::de::DeserializeOwned>(t: &toml::Table) -> Result<T, ScenarioError> {
            t.clone().try_into().map_err(|e: toml::de::Error| ScenarioError::Parse(format!("[params] {}", e.message())))
        }
        let t = &self.params;
        Ok(match self.kind {
            Kind::Coherent => Params::Coherent(conv(t)?),
            Kind::Counterexample => Params::Counterexample(conv(t)?),
            Kind::Chain => Params::Chain(conv(t)?),
            Kind::Spread => Params::Spread(conv(t)?),
            Kind::Pulse => Params::Pulse(conv(t)?),
            Kind::Weigh => Params::Weigh(conv(t)?),
            Kind::Separation => Params::Separation(conv(t)?),
        })
    }

    /// Copy with one parameter fixed to `value`. `alpha` and `t` address the
    /// single entry of the `alphas` and `times` lists.
    pub fn with_param(&self, name: &str, value: f64) -> Result<Self, ScenarioError> {
        let mut out = self.clone();
        let float = toml::Value::Float(value);
        match (self.kind, name) {
            (Kind::Coherent | Kind::Counterexample, "alpha") => {
                out.params.insert("alphas".into(), toml::Value::Array(vec![float]));
            }
            (Kind::Spread, "t") => {
                out.params.insert("times".into(), toml::Value::Array(vec![float]));
            }
            (Kind::Separation, "alpha") => {
                let mut state = toml::Table::new();
                state.insert("coherent".into(), float);
                out.params.insert("state".into(), toml::Value::Table(state));
            }
            _ => {
                let value = match self.params.get(name) {
                    Some(toml::Value::Integer(_)) if value.fract() == 0.0 => toml::Value::Integer(value as i64),
                    _ => float,
                };
                out.params.insert(name.into(), value);
            }
        }
        out.typed_params().map_err(|e| match e {
            ScenarioError::Parse(msg) => ScenarioError::Invalid(format!("cannot sweep `{name}`: {msg}")),
            other => other,
        })?;
        Ok(out)
    }
}

/// Appends `line L, column C` for an unknown or invalid key named in `msg`.
fn locate_key(source: &str, msg: &str) -> String {
    let Some(start) = msg.find('`') else { return msg.to_string() };
    let rest = &msg[start + 1..];
    let Some(end) = rest.find('`') else { return msg.to_string() };
    let key = &rest[..end];
    for (i, line) in source.lines().enumerate() {
        let trimmed = line.trim_start();
        if let Some(after) = trimmed.strip_prefix(key) {
            if after.trim_start().starts_with('=') {
                let col = line.len() - trimmed.len() + 1;
                return format!("{msg} at line {}, column {col}", i + 1);
            }
        }
    }
    msg.to_string()
}

/// Coherent amplitude written as a real number or a `[re, im]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphaSpec {
    Real(f64),
    Pair([f64; 2]),
}

impl AlphaSpec {
    pub fn value(self) -> Complex64 {
        match self {
            AlphaSpec::Real(re) => Complex64::new(re, 0.0),
            AlphaSpec::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoherentParams {
    pub alphas: Vec<AlphaSpec>,
    /// When present, every |alpha| is combined with every phase.
    #[serde(default)]
    pub phases: Option<Vec<f64>>,
    #[serde(default = "one")]
    pub mass: f64,
    #[serde(default = "one")]
    pub omega: f64,
    #[serde(default)]
    pub hbar: Option<f64>,
    /// Random states for the indeterminacy-product sweep.
    #[serde(default)]
    pub random_states: usize,
    #[serde(default = "default_random_levels")]
    pub random_levels: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CounterexampleParams {
    pub alphas: Vec<AlphaSpec>,
    #[serde(default = "one")]
    pub mass: f64,
    #[serde(default = "one")]
    pub omega: f64,
    #[serde(default = "one")]
    pub balancing_time: f64,
    #[serde(default)]
    pub hbar: Option<f64>,
    #[serde(default)]
    pub c: Option<f64>,
    #[serde(default)]
    pub g: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainParams {
    #[serde(default)]
    pub delta_p: Option<f64>,
    #[serde(default)]
    pub delta_q: Option<f64>,
    #[serde(default = "one")]
    pub balancing_time: f64,
    #[serde(default)]
    pub hbar: Option<f64>,
    #[serde(default)]
    pub c: Option<f64>,
    #[serde(default)]
    pub g: Option<f64>,
    /// Random positive parameter points (seeded) checked on top of the explicit one.
    #[serde(default)]
    pub random_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpreadParams {
    pub sigma: f64,
    #[serde(default)]
    pub x0: f64,
    #[serde(default)]
    pub p0: f64,
    #[serde(default = "one")]
    pub mass: f64,
    #[serde(default)]
    pub hbar: Option<f64>,
    pub times: Vec<f64>,
    /// Random packets (σ ∈ [0.5, 4], p0 ∈ [-3, 3]) checked at the same times.
    #[serde(default)]
    pub random_packets: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseParams {
    pub shape: PulseShape,
    pub width: f64,
    /// Sample spacing; defaults to `width / pulse_samples_per_width`.
    #[serde(default)]
    pub dt: Option<f64>,
    #[serde(default)]
    pub hbar: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeighParams {
    pub delta_m: f64,
    pub duration: f64,
    #[serde(default = "one")]
    pub mass: f64,
    #[serde(default = "one")]
    pub omega: f64,
    #[serde(default)]
    pub g: Option<f64>,
    #[serde(default)]
    pub steps: Option<usize>,
}

/// Box state for the separation check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum StateSpec {
    Coherent(AlphaSpec),
    Fock(usize),
    /// Fock-basis amplitudes as `[re, im]` pairs.
    Amplitudes(Vec<[f64; 2]>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeparationParams {
    pub state: StateSpec,
    /// Classical momentum uncertainty δp.
    pub delta_p: f64,
    /// Classical mass uncertainty δm.
    pub delta_m: f64,
    #[serde(default = "one")]
    pub delta_q: f64,
    #[serde(default = "one")]
    pub mass: f64,
    #[serde(default = "one")]
    pub omega: f64,
    #[serde(default = "one")]
    pub balancing_time: f64,
    #[serde(default)]
    pub dim: Option<usize>,
    #[serde(default)]
    pub hbar: Option<f64>,
    #[serde(default)]
    pub c: Option<f64>,
    #[serde(default)]
    pub g: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Params {
    Coherent(CoherentParams),
    Counterexample(CounterexampleParams),
    Chain(ChainParams),
    Spread(SpreadParams),
    Pulse(PulseParams),
    Weigh(WeighParams),
    Separation(SeparationParams),
}

fn one() -> f64 {
    1.0
}

fn default_random_levels() -> usize {
    20
}
