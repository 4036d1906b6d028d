//! Benchmark construction: sampling (word, target sense) pairs and choosing a
//! distractor sense of the same word at a controlled similarity level.

use std::cmp::Ordering;
use std::path::Path;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lexicon::{sha256_hex, Entry, Lexicon, Sense};
use crate::modelio::{Embedder, ModelError};

pub const FORMAT_VERSION: u32 = 1;
pub const MID_CONVENTION: &str = "floor(k/2) of the descending list";
pub const SIMILARITY: &str = "dot product of L2-normalized embeddings";

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("word {0:?} has a single sense")]
    Monosemous(String),
    #[error("word {word:?} has no sense with id {id:?}")]
    UnknownSense { word: String, id: String },
    #[error("word {0:?} is not in the lexicon")]
    UnknownWord(String),
    #[error("no alternatives to choose a distractor from")]
    NoAlternatives,
    #[error("requested {requested} instances but only {available} eligible (word, sense) pairs exist")]
    InsufficientPairs { requested: usize, available: usize },
    #[error("target sense {id:?} of {word:?} has no usage example")]
    MissingExample { word: String, id: String },
    #[error("encoder failed: {0}")]
    Model(#[from] ModelError),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid bench set: {0}")]
    Invalid(String),
    #[error("failed to access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Difficulty {
    Easy,
    Mid,
    Hard,
    Rand,
}

impl Difficulty {
    pub const ALL: [Difficulty; 4] = [
        Difficulty::Easy,
        Difficulty::Mid,
        Difficulty::Hard,
        Difficulty::Rand,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Difficulty::Easy => "easy",
            Difficulty::Mid => "mid",
            Difficulty::Hard => "hard",
            Difficulty::Rand => "rand",
        }
    }
}

impl std::str::FromStr for Difficulty {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "easy" => Ok(Difficulty::Easy),
            "mid" | "med" | "medium" => Ok(Difficulty::Mid),
            "hard" => Ok(Difficulty::Hard),
            "rand" | "random" => Ok(Difficulty::Rand),
            other => Err(format!("unknown difficulty {other:?} (easy|mid|hard|rand)")),
        }
    }
}

impl std::fmt::Display for Difficulty {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchInstance {
    pub instance_index: usize,
    pub word: String,
    pub pos: String,
    pub target_sense_id: String,
    pub distractor_sense_id: String,
    pub difficulty: Difficulty,
}

/// Borrowed view of an instance's senses inside a lexicon.
#[derive(Debug, Clone, Copy)]
pub struct ResolvedInstance<'a> {
    pub entry: &'a Entry,
    pub target: &'a Sense,
    pub distractor: &'a Sense,
}

impl BenchInstance {
    pub fn resolve<'a>(&self, lex: &'a Lexicon) -> Result<ResolvedInstance<'a>, BenchError> {
        let entry = lex
            .entry(&self.word)
            .ok_or_else(|| BenchError::UnknownWord(self.word.clone()))?;
        let find = |id: &str| {
            entry.sense(id).ok_or_else(|| BenchError::UnknownSense {
                word: self.word.clone(),
                id: id.to_string(),
            })
        };
        Ok(ResolvedInstance {
            entry,
            target: find(&self.target_sense_id)?,
            distractor: find(&self.distractor_sense_id)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchManifest {
    pub format_version: u32,
    pub n: usize,
    pub seed: u64,
    pub difficulty: Difficulty,
    pub require_examples: bool,
    pub language: String,
    pub lexicon_digest: String,
    pub encoder: String,
    pub similarity: String,
    pub mid_convention: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchSet {
    pub manifest: BenchManifest,
    pub instances: Vec<BenchInstance>,
}

#[derive(Serialize, Deserialize)]
struct ManifestLine {
    manifest: BenchManifest,
}

impl BenchSet {
    /// Manifest header line followed by one line per instance.
    pub fn to_jsonl(&self) -> String {
        let mut out = serde_json::to_string(&ManifestLine {
            manifest: self.manifest.clone(),
        })
        .expect("manifest serializes");
        out.push('\n');
        for inst in &self.instances {
            out.push_str(&serde_json::to_string(inst).expect("instance serializes"));
            out.push('\n');
        }
        out
    }

    pub fn digest(&self) -> String {
        sha256_hex(self.to_jsonl().as_bytes())
    }

    pub fn parse(text: &str) -> Result<Self, BenchError> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| BenchError::Invalid("empty bench file".into()))?;
        let manifest = serde_json::from_str::<ManifestLine>(header)
            .map_err(|e| BenchError::Parse {
                line: 1,
                message: format!("manifest header: {e}"),
            })?
            .manifest;
        let mut instances = Vec::new();
        for (i, line) in lines {
            let inst: BenchInstance = serde_json::from_str(line).map_err(|e| BenchError::Parse {
                line: i + 1,
                message: e.to_string(),
            })?;
            instances.push(inst);
        }
        let set = BenchSet { manifest, instances };
        set.validate()?;
        Ok(set)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, BenchError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| BenchError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), BenchError> {
        let path = path.as_ref();
        std::fs::write(path, self.to_jsonl()).map_err(|source| BenchError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if self.instances.len() != self.manifest.n {
            return Err(BenchError::Invalid(format!(
                "manifest declares {} instances, found {}",
                self.manifest.n,
                self.instances.len()
            )));
        }
        for (i, inst) in self.instances.iter().enumerate() {
            if inst.instance_index != i {
                return Err(BenchError::Invalid(format!(
                    "instance at position {i} has index {}",
                    inst.instance_index
                )));
            }
            if inst.target_sense_id == inst.distractor_sense_id {
                return Err(BenchError::Invalid(format!(
                    "instance {i}: target and distractor are the same sense"
                )));
            }
        }
        Ok(())
    }

    /// Checks that every instance resolves against `lex` and that the lexicon
    /// is the one the set was built from.
    pub fn check_against(&self, lex: &Lexicon) -> Result<(), BenchError> {
        if lex.source_digest != self.manifest.lexicon_digest {
            return Err(BenchError::Invalid(format!(
                "bench was built from lexicon {} but {} was supplied",
                self.manifest.lexicon_digest, lex.source_digest
            )));
        }
        for inst in &self.instances {
            let r = inst.resolve(lex)?;
            if self.manifest.require_examples && r.target.example.is_none() {
                return Err(BenchError::MissingExample {
                    word: inst.word.clone(),
                    id: inst.target_sense_id.clone(),
                });
            }
        }
        Ok(())
    }
}

/// Sense-id order: numeric when both ids are integers, lexicographic otherwise.
pub fn cmp_sense_ids(a: &str, b: &str) -> Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        _ => a.cmp(b),
    }
}

/// Orders `(sense_id, similarity)` by similarity descending, then id ascending.
pub fn sort_ranked(ranked: &mut [(String, f64)]) {
    ranked.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .unwrap_or(Ordering::Equal)
            .then_with(|| cmp_sense_ids(&a.0, &b.0))
    });
}

/// All senses of `entry` except the target, most similar first.
pub fn rank_alternatives(
    entry: &Entry,
    target_sense_id: &str,
    encoder: &dyn Embedder,
) -> Result<Vec<(String, f64)>, BenchError> {
    if !entry.is_polysemous() {
        return Err(BenchError::Monosemous(entry.word.clone()));
    }
    let target = entry
        .sense(target_sense_id)
        .ok_or_else(|| BenchError::UnknownSense {
            word: entry.word.clone(),
            id: target_sense_id.to_string(),
        })?;
    let target_vec = encoder.embed(&target.definition)?;
    let mut ranked = entry
        .senses
        .iter()
        .filter(|s| s.id != target.id)
        .map(|s| Ok((s.id.clone(), target_vec.cosine(&encoder.embed(&s.definition)?))))
        .collect::<Result<Vec<_>, BenchError>>()?;
    sort_ranked(&mut ranked);
    Ok(ranked)
}

pub fn select_distractor<R: Rng + ?Sized>(
    ranked: &[(String, f64)],
    difficulty: Difficulty,
    rng: &mut R,
) -> Result<String, BenchError> {
    if ranked.is_empty() {
        return Err(BenchError::NoAlternatives);
    }
    let k = ranked.len();
    let idx = match difficulty {
        Difficulty::Hard => 0,
        Difficulty::Easy => k - 1,
        Difficulty::Mid => k / 2,
        Difficulty::Rand => rng.random_range(0..k),
    };
    Ok(ranked[idx].0.clone())
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchParams {
    pub n: usize,
    pub seed: u64,
    pub require_examples: bool,
}

/// (entry index, sense index) pairs a target may be drawn from.
pub fn eligible_pairs(lex: &Lexicon, require_examples: bool) -> Vec<(usize, usize)> {
    lex.entries
        .iter()
        .enumerate()
        .filter(|(_, e)| e.is_polysemous())
        .flat_map(|(ei, e)| {
            e.senses
                .iter()
                .enumerate()
                .filter(move |(_, s)| !require_examples || s.example.is_some())
                .map(move |(si, _)| (ei, si))
        })
        .collect()
}

/// Samples `n` distinct target pairs. Depends only on the lexicon, `seed`,
/// and `require_examples`, so every difficulty shares the same targets.
pub fn sample_targets(lex: &Lexicon, params: &BenchParams) -> Result<Vec<(usize, usize)>, BenchError> {
    let pool = eligible_pairs(lex, params.require_examples);
    if pool.len() < params.n {
        return Err(BenchError::InsufficientPairs {
            requested: params.n,
            available: pool.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    Ok(index::sample(&mut rng, pool.len(), params.n)
        .into_iter()
        .map(|i| pool[i])
        .collect())
}

/// Builds one set per requested difficulty over a shared target sample.
/// Ranking runs on the ambient rayon pool.
pub fn build_bench_sets(
    lex: &Lexicon,
    params: &BenchParams,
    difficulties: &[Difficulty],
    encoder: &dyn Embedder,
) -> Result<Vec<BenchSet>, BenchError> {
    let targets = sample_targets(lex, params)?;
    let ranked: Vec<Vec<(String, f64)>> = targets
        .par_iter()
        .map(|&(ei, si)| {
            let entry = &lex.entries[ei];
            rank_alternatives(entry, &entry.senses[si].id, encoder)
        })
        .collect::<Result<_, _>>()?;

    let mut sets = Vec::with_capacity(difficulties.len());
    for &difficulty in difficulties {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        rng.set_stream(1);
        let mut instances = Vec::with_capacity(targets.len());
        for (i, (&(ei, si), alts)) in targets.iter().zip(&ranked).enumerate() {
            let entry = &lex.entries[ei];
            let target = &entry.senses[si];
            instances.push(BenchInstance {
                instance_index: i,
                word: entry.word.clone(),
                pos: target.pos.clone(),
                target_sense_id: target.id.clone(),
                distractor_sense_id: select_distractor(alts, difficulty, &mut rng)?,
                difficulty,
            });
        }
        sets.push(BenchSet {
            manifest: BenchManifest {
                format_version: FORMAT_VERSION,
                n: params.n,
                seed: params.seed,
                difficulty,
                require_examples: params.require_examples,
                language: lex.language.clone(),
                lexicon_digest: lex.source_digest.clone(),
                encoder: encoder.backend_id(),
                similarity: SIMILARITY.into(),
                mid_convention: MID_CONVENTION.into(),
            },
            instances,
        });
    }
    Ok(sets)
}

pub fn build_bench_set(
    lex: &Lexicon,
    n: usize,
    difficulty: Difficulty,
    seed: u64,
    require_examples: bool,
    encoder: &dyn Embedder,
) -> Result<BenchSet, BenchError> {
    let params = BenchParams {
        n,
        seed,
        require_examples,
    };
    Ok(build_bench_sets(lex, &params, &[difficulty], encoder)?
        .pop()
        .expect("one difficulty requested"))
}
