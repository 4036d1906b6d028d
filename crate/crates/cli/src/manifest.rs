//! Provenance record written next to every command's outputs.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context};
use sembench_core::lexicon::sha256_hex;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;

pub const MANIFEST_FILE: &str = "manifest.json";

/// Seconds since the epoch. `SOURCE_DATE_EPOCH` pins the value; mock runs
/// without it use 0 so repeated runs produce identical trees.
#[derive(Debug, Clone, Copy)]
pub struct Clock {
    fixed: Option<u64>,
}

impl Clock {
    pub fn new(mock: bool) -> Self {
        let pinned = std::env::var("SOURCE_DATE_EPOCH")
            .ok()
            .and_then(|v| v.trim().parse().ok());
        Clock {
            fixed: pinned.or(mock.then_some(0)),
        }
    }

    pub fn now(&self) -> u64 {
        self.fixed.unwrap_or_else(|| {
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs())
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: PathBuf,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stage {
    pub name: String,
    pub started: u64,
    pub finished: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Complete,
    Partial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub tool_version: String,
    pub command: String,
    pub status: Status,
    pub config: RunConfig,
    pub config_digest: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lexicon_digest: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bench_digest: Option<String>,
    /// Inputs as given on the command line, relative paths kept relative.
    pub inputs: Vec<FileDigest>,
    /// Outputs relative to the manifest's directory.
    pub outputs: Vec<FileDigest>,
    pub stages: Vec<Stage>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, serde_json::Value>,
}

pub fn file_digest(path: &Path) -> anyhow::Result<String> {
    let bytes = std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    Ok(sha256_hex(&bytes))
}

/// Collects provenance while a command runs, then writes the manifest last.
pub struct Recorder {
    clock: Clock,
    manifest: RunManifest,
    dir: PathBuf,
    open_stage: Option<(String, u64)>,
}

impl Recorder {
    pub fn new(command: &str, config: &RunConfig, dir: &Path) -> Self {
        let canonical = config.canonical_json();
        Recorder {
            clock: Clock::new(config.mock),
            manifest: RunManifest {
                tool: "sembench".into(),
                tool_version: env!("CARGO_PKG_VERSION").into(),
                command: command.into(),
                status: Status::Complete,
                config: config.clone(),
                config_digest: sha256_hex(canonical.as_bytes()),
                lexicon_digest: None,
                bench_digest: None,
                inputs: Vec::new(),
                outputs: Vec::new(),
                stages: Vec::new(),
                extra: BTreeMap::new(),
            },
            dir: dir.to_path_buf(),
            open_stage: None,
        }
    }

    pub fn stage(&mut self, name: &str) {
        self.close_stage();
        self.open_stage = Some((name.to_string(), self.clock.now()));
    }

    fn close_stage(&mut self) {
        if let Some((name, started)) = self.open_stage.take() {
            self.manifest.stages.push(Stage {
                name,
                started,
                finished: self.clock.now(),
            });
        }
    }

    pub fn input(&mut self, path: &Path) -> anyhow::Result<()> {
        let sha256 = file_digest(path)?;
        self.manifest.inputs.push(FileDigest {
            path: path.to_path_buf(),
            sha256,
        });
        Ok(())
    }

    pub fn lexicon_digest(&mut self, digest: &str) {
        self.manifest.lexicon_digest = Some(digest.to_string());
    }

    pub fn bench_digest(&mut self, digest: &str) {
        self.manifest.bench_digest = Some(digest.to_string());
    }

    pub fn extra(&mut self, key: &str, value: serde_json::Value) {
        self.manifest.extra.insert(key.to_string(), value);
    }

    pub fn partial(&mut self) {
        self.manifest.status = Status::Partial;
    }

    /// Writes `contents` to `name` inside the output directory and records it.
    pub fn write(&mut self, name: &str, contents: &str) -> anyhow::Result<()> {
        std::fs::create_dir_all(&self.dir)
            .with_context(|| format!("cannot create {}", self.dir.display()))?;
        let path = self.dir.join(name);
        std::fs::write(&path, contents).with_context(|| format!("cannot write {}", path.display()))?;
        self.manifest.outputs.push(FileDigest {
            path: PathBuf::from(name),
            sha256: sha256_hex(contents.as_bytes()),
        });
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> anyhow::Result<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.write(name, &text)
    }

    pub fn finish(mut self) -> anyhow::Result<RunManifest> {
        self.close_stage();
        let mut text = serde_json::to_string_pretty(&self.manifest)?;
        text.push('\n');
        let path = self.dir.join(MANIFEST_FILE);
        std::fs::create_dir_all(&self.dir)?;
        std::fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?;
        Ok(self.manifest)
    }
}

/// Recomputes every digest a manifest records. Input paths are resolved
/// against `base` when relative.
pub fn verify(dir: &Path, base: &Path) -> anyhow::Result<RunManifest> {
    let path = dir.join(MANIFEST_FILE);
    let text = std::fs::read_to_string(&path).with_context(|| format!("cannot read {}", path.display()))?;
    let m: RunManifest =
        serde_json::from_str(&text).with_context(|| format!("invalid manifest {}", path.display()))?;
    let mut problems = Vec::new();
    if sha256_hex(m.config.canonical_json().as_bytes()) != m.config_digest {
        problems.push("config digest does not match the recorded config".to_string());
    }
    let check = |p: &Path, want: &str, problems: &mut Vec<String>| match file_digest(p) {
        Ok(got) if got == want => {}
        Ok(_) => problems.push(format!("{} changed", p.display())),
        Err(_) => problems.push(format!("{} is missing", p.display())),
    };
    for f in &m.outputs {
        check(&dir.join(&f.path), &f.sha256, &mut problems);
    }
    for f in &m.inputs {
        let p = if f.path.is_absolute() { f.path.clone() } else { base.join(&f.path) };
        check(&p, &f.sha256, &mut problems);
    }
    if !problems.is_empty() {
        bail!("manifest {} does not verify:\n  {}", path.display(), problems.join("\n  "));
    }
    Ok(m)
}
