//! Run options, from flags or a JSON config file.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{Context, Result};
use clap::{Parser, ValueEnum};
use cubint_core::catalog::ModelSpec;
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Classify,
    Verify,
    Simulate,
    Catalog,
    Residuals,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassifyFamily {
    /// `F = ζ³ + 3c0ζ − 2ρ0`.
    Q0,
    /// `F = c0 + c1ζ + c2ζ²`.
    P0,
    /// `F = ε(ζ³ + c2ζ² + c1ζ + c0)`.
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A spec given inline as JSON, as a path to a JSON file, or (in a config
/// file) as an object.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum SpecSource {
    Inline(ModelSpec),
    Text(String),
}

impl FromStr for SpecSource {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(SpecSource::Text(s.to_owned()))
    }
}

impl SpecSource {
    pub fn resolve(&self) -> Result<ModelSpec> {
        match self {
            SpecSource::Inline(spec) => Ok(*spec),
            SpecSource::Text(t) if t.trim_start().starts_with('{') => {
                serde_json::from_str(t).context("parsing inline spec JSON")
            }
            SpecSource::Text(path) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading spec file {path}"))?;
                serde_json::from_str(&text).with_context(|| format!("parsing spec file {path}"))
            }
        }
    }
}

/// Integrable geodesic flows with a cubic first integral.
#[derive(Debug, Clone, Default, Parser, Deserialize)]
#[command(name = "cubint", version, allow_negative_numbers = true)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct Options {
    /// What to do; may also come from the config file.
    #[arg(value_enum)]
    pub command: Option<Command>,

    /// JSON file with any of these options; flags win on conflict.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,

    /// Named preset (see `catalog`).
    #[arg(long, conflicts_with = "spec")]
    pub preset: Option<String>,
    /// Model spec as inline JSON or a path to a JSON file.
    #[arg(long)]
    pub spec: Option<SpecSource>,

    /// Parameter family for `classify`.
    #[arg(long, value_enum)]
    pub family: Option<ClassifyFamily>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub c0: Option<f64>,
    #[arg(long)]
    pub c1: Option<f64>,
    #[arg(long)]
    pub c2: Option<f64>,
    #[arg(long)]
    pub rho0: Option<f64>,
    /// Real roots of F, comma separated; replaces the coefficients.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub roots: Option<Vec<f64>>,

    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub t_end: Option<f64>,
    /// Initial state `x1,x2,p1,p2`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub state: Option<Vec<f64>>,
    /// Number of grid points for `residuals`.
    #[arg(long)]
    pub points: Option<usize>,
    /// Debug: multiply the α group of Q by `1 + perturb`.
    #[arg(long)]
    pub perturb: Option<f64>,

    /// Output file; stdout when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Drift report of `simulate`; defaults to `<output>.drift.json`.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

macro_rules! merge {
    ($a:ident, $b:ident; $($f:ident),*) => {
        Options { config: $a.config, $($f: $a.$f.or($b.$f)),* }
    };
}

impl Options {
    /// Flags in `self` override values from `file`.
    pub fn merged_with(self, mut file: Options) -> Options {
        // A model given on the command line replaces the file's, whichever
        // form either uses.
        if self.preset.is_some() || self.spec.is_some() {
            file.preset = None;
            file.spec = None;
        }
        merge!(self, file; command, preset, spec, family, eps, c0, c1, c2, rho0, roots, samples, tol, seed,
            dt, t_end, state, points, perturb, output, format, report)
    }

    pub fn load_config(path: &Path) -> Result<Options> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}
