//! Run configuration: one TOML file plus command-line overrides.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use sembench_core::runner::{DEFAULT_MAX_FAILURE_RATE, DEFAULT_WIC_THRESHOLD};
use sembench_core::{Difficulty, RetryPolicy};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BenchConfig {
    pub n: usize,
    pub difficulty: Vec<Difficulty>,
    pub seed: u64,
    pub require_examples: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            n: 1000,
            difficulty: Difficulty::ALL.to_vec(),
            seed: 0,
            require_examples: true,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Endpoint {
    pub endpoint: Option<String>,
    pub model: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub language: String,
    pub lexicon: Option<PathBuf>,
    pub exemplars: Option<PathBuf>,
    pub templates: Option<PathBuf>,
    pub bench: BenchConfig,
    pub chat: Endpoint,
    pub embedding: Endpoint,
    pub shots: usize,
    pub threshold: f64,
    pub max_failure_rate: f64,
    /// Worker threads; `None` uses one per core.
    pub concurrency: Option<usize>,
    pub retry: RetryPolicy,
    pub cache_dir: Option<PathBuf>,
    pub out: PathBuf,
    pub mock: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            language: "English".into(),
            lexicon: None,
            exemplars: None,
            templates: None,
            bench: BenchConfig::default(),
            chat: Endpoint::default(),
            embedding: Endpoint::default(),
            shots: 0,
            threshold: DEFAULT_WIC_THRESHOLD,
            max_failure_rate: DEFAULT_MAX_FAILURE_RATE,
            concurrency: None,
            retry: RetryPolicy::default(),
            cache_dir: None,
            out: PathBuf::from("out"),
            mock: false,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("invalid config file {}", path.display()))
    }

    /// Canonical serialization recorded in manifests and digested.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if !(self.threshold > 0.0 && self.threshold < 1.0) {
            bail!("threshold must lie in (0, 1), got {}", self.threshold);
        }
        if !(0.0..=1.0).contains(&self.max_failure_rate) {
            bail!("max_failure_rate must lie in [0, 1], got {}", self.max_failure_rate);
        }
        if self.concurrency == Some(0) {
            bail!("concurrency must be at least 1");
        }
        if self.bench.difficulty.is_empty() {
            bail!("no difficulty requested");
        }
        // The cache directory is created on demand, so it is not checked here.
        for p in [&self.lexicon, &self.exemplars, &self.templates].into_iter().flatten() {
            require_exists(p)?;
        }
        Ok(())
    }
}

pub fn require_exists(path: &Path) -> anyhow::Result<()> {
    if !path.exists() {
        bail!("no such file or directory: {}", path.display());
    }
    Ok(())
}
