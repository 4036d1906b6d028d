//! End-to-end protocols for one model configuration.
//!
//! * `SbDef`: definition -> generated example -> generated definition.
//! * `SbEx`: dictionary example -> generated definition.
//! * WiC: one generated definition per context, compared against a threshold.
//!
//! A generated definition counts as correct when its similarity to the target
//! definition is strictly greater than its similarity to the distractor.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::benchgen::{BenchError, BenchInstance, BenchSet, Difficulty};
use crate::lexicon::Lexicon;
use crate::modelio::mock::prompt_digest;
use crate::modelio::{ChatModel, ChatParams, Embedder, ModelError};
use crate::prompting::{Direction, FewShotExemplar, PromptError, Prompter};

pub const DEFAULT_MAX_FAILURE_RATE: f64 = 0.05;
pub const DEFAULT_WIC_THRESHOLD: f64 = 0.5;

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Bench(#[from] BenchError),
    #[error(transparent)]
    Prompt(#[from] PromptError),
    #[error("{shots} shots requested but only {available} exemplars are loaded")]
    NotEnoughExemplars { shots: usize, available: usize },
    #[error("instance {index}: target sense has no dictionary example (build the bench with require_examples)")]
    MissingExample { index: usize },
    #[error("no WiC pairs to evaluate")]
    NoPairs,
    #[error("threshold must lie in (0, 1), got {0}")]
    BadThreshold(f64),
    #[error("{failed} of {total} items failed, above the allowed rate {max_rate}")]
    TooManyFailures {
        failed: usize,
        total: usize,
        max_rate: f64,
        partial: Box<Partial>,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("failed to access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Results gathered before a run was aborted.
#[derive(Debug, Clone)]
pub enum Partial {
    Bench(EvalRun),
    Wic(WicResult),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    SbDef,
    SbEx,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::SbDef => "sb_def",
            Variant::SbEx => "sb_ex",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "def" | "sb_def" => Ok(Variant::SbDef),
            "ex" | "sb_ex" => Ok(Variant::SbEx),
            other => Err(format!("unknown variant {other:?} (def|ex)")),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Step {
    Example,
    Definition,
    Embedding,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub step: Step,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceResult {
    pub instance_index: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_example: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_definition: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sim_target: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sim_distractor: Option<f64>,
    pub correct: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
    /// Digests of every message sequence sent, in order.
    pub prompt_digests: Vec<String>,
    /// SB_Def diagnostic: whether the headword occurs in the generated example.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word_in_example: Option<bool>,
}

impl InstanceResult {
    fn failed(index: usize, step: Step, reason: String, digests: Vec<String>) -> Self {
        InstanceResult {
            instance_index: index,
            generated_example: None,
            generated_definition: None,
            sim_target: None,
            sim_distractor: None,
            correct: false,
            failure: Some(Failure { step, reason }),
            prompt_digests: digests,
            word_in_example: None,
        }
    }

    pub fn is_failed(&self) -> bool {
        self.failure.is_some()
    }

    /// Correctness as stored, `None` for failed instances.
    pub fn outcome(&self) -> Option<bool> {
        (!self.is_failed()).then_some(self.correct)
    }
}

/// Trims, drops one pair of enclosing quotes, and folds line breaks into
/// single spaces. `None` if nothing is left.
pub fn clean_generation(raw: &str) -> Option<String> {
    const PAIRS: [(char, char); 7] = [
        ('"', '"'),
        ('\'', '\''),
        ('`', '`'),
        ('`', '\''),
        ('\u{201c}', '\u{201d}'),
        ('\u{2018}', '\u{2019}'),
        ('\u{ab}', '\u{bb}'),
    ];
    let mut s = raw.trim();
    for (open, close) in PAIRS {
        if s.chars().count() >= 2 && s.starts_with(open) && s.ends_with(close) {
            s = s[open.len_utf8()..s.len() - close.len_utf8()].trim();
            break;
        }
    }
    let folded = s
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect::<Vec<_>>()
        .join(" ");
    (!folded.is_empty()).then_some(folded)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRun {
    pub model: String,
    pub backend: String,
    pub variant: Variant,
    pub shots: usize,
    pub difficulty: Difficulty,
    pub bench_digest: String,
    pub results: Vec<InstanceResult>,
    pub n: usize,
    pub scored: usize,
    pub failed: usize,
    pub correct: usize,
    pub accuracy: f64,
}

/// Aggregate record written next to per-item results; also the input format
/// of correlation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub kind: String,
    pub model: String,
    pub accuracy: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub difficulty: Option<Difficulty>,
    #[serde(default)]
    pub shots: usize,
    #[serde(default)]
    pub n: usize,
    #[serde(default)]
    pub scored: usize,
    #[serde(default)]
    pub failed: usize,
    #[serde(default)]
    pub correct: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bench_digest: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word_occurrence_rate: Option<f64>,
}

fn tally(outcomes: impl Iterator<Item = Option<bool>>) -> (usize, usize, usize, f64) {
    let (mut scored, mut failed, mut correct) = (0, 0, 0);
    for o in outcomes {
        match o {
            Some(c) => {
                scored += 1;
                correct += c as usize;
            }
            None => failed += 1,
        }
    }
    let accuracy = if scored == 0 {
        0.0
    } else {
        correct as f64 / scored as f64
    };
    (scored, failed, correct, accuracy)
}

impl EvalRun {
    pub fn summary(&self) -> Summary {
        let diag: Vec<bool> = self.results.iter().filter_map(|r| r.word_in_example).collect();
        Summary {
            kind: "sembench".into(),
            model: self.model.clone(),
            accuracy: self.accuracy,
            variant: Some(self.variant),
            difficulty: Some(self.difficulty),
            shots: self.shots,
            n: self.n,
            scored: self.scored,
            failed: self.failed,
            correct: self.correct,
            bench_digest: Some(self.bench_digest.clone()),
            threshold: None,
            word_occurrence_rate: (!diag.is_empty())
                .then(|| diag.iter().filter(|&&b| b).count() as f64 / diag.len() as f64),
        }
    }

    pub fn results_jsonl(&self) -> String {
        to_jsonl(&self.results)
    }

    pub fn outcomes(&self) -> Vec<Option<bool>> {
        self.results.iter().map(InstanceResult::outcome).collect()
    }
}

fn to_jsonl<T: Serialize>(items: &[T]) -> String {
    let mut out = String::new();
    for it in items {
        out.push_str(&serde_json::to_string(it).expect("result serializes"));
        out.push('\n');
    }
    out
}

pub fn parse_jsonl<T: serde::de::DeserializeOwned>(text: &str) -> Result<Vec<T>, RunError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| RunError::Parse {
                line: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

/// Everything a protocol run needs besides the items themselves.
pub struct Harness<'a> {
    pub lexicon: &'a Lexicon,
    pub prompter: &'a Prompter,
    pub chat: &'a dyn ChatModel,
    pub embedder: &'a dyn Embedder,
    pub params: ChatParams,
    pub exemplars: &'a [FewShotExemplar],
    pub max_failure_rate: f64,
}

impl<'a> Harness<'a> {
    fn shots(&self, shots: usize) -> Result<&'a [FewShotExemplar], RunError> {
        self.exemplars
            .get(..shots)
            .ok_or(RunError::NotEnoughExemplars {
                shots,
                available: self.exemplars.len(),
            })
    }

    /// One chat call; the digest is recorded even if the call fails.
    fn generate(
        &self,
        direction: Direction,
        word: &str,
        pos: &str,
        content: &str,
        exemplars: &[FewShotExemplar],
        digests: &mut Vec<String>,
    ) -> Result<Result<String, String>, RunError> {
        let task = self.prompter.render(direction, word, pos, content)?;
        let messages = self.prompter.assemble_messages(&task, exemplars, direction)?;
        digests.push(prompt_digest(&messages));
        Ok(match self.chat.complete(&messages, &self.params) {
            Ok(raw) => clean_generation(&raw).ok_or_else(|| "empty generation".to_string()),
            Err(e) => Err(e.to_string()),
        })
    }

    fn score(
        &self,
        inst: &BenchInstance,
        generated: &str,
    ) -> Result<(f64, f64), ModelError> {
        let r = inst
            .resolve(self.lexicon)
            .map_err(|e| ModelError::InvalidInput(e.to_string()))?;
        let g = self.embedder.embed(generated)?;
        let t = self.embedder.embed(&r.target.definition)?;
        let d = self.embedder.embed(&r.distractor.definition)?;
        Ok((g.cosine(&t), g.cosine(&d)))
    }

    fn finish(
        &self,
        inst: &BenchInstance,
        example: Option<String>,
        definition: String,
        digests: Vec<String>,
        word_in_example: Option<bool>,
    ) -> InstanceResult {
        match self.score(inst, &definition) {
            Ok((st, sd)) => InstanceResult {
                instance_index: inst.instance_index,
                generated_example: example,
                generated_definition: Some(definition),
                sim_target: Some(st),
                sim_distractor: Some(sd),
                correct: st > sd,
                failure: None,
                prompt_digests: digests,
                word_in_example,
            },
            Err(e) => {
                let mut r = InstanceResult::failed(inst.instance_index, Step::Embedding, e.to_string(), digests);
                r.generated_example = example;
                r.generated_definition = Some(definition);
                r
            }
        }
    }

    pub fn run_instance_def(&self, inst: &BenchInstance, shots: usize) -> Result<InstanceResult, RunError> {
        let exemplars = self.shots(shots)?;
        let r = inst.resolve(self.lexicon)?;
        let mut digests = Vec::new();
        let example = match self.generate(
            Direction::ExampleFromDef,
            &inst.word,
            &inst.pos,
            &r.target.definition,
            exemplars,
            &mut digests,
        )? {
            Ok(e) => e,
            Err(reason) => {
                return Ok(InstanceResult::failed(inst.instance_index, Step::Example, reason, digests))
            }
        };
        let occurs = example.to_lowercase().contains(&inst.word.to_lowercase());
        let definition = match self.generate(
            Direction::DefFromExample,
            &inst.word,
            &inst.pos,
            &example,
            exemplars,
            &mut digests,
        )? {
            Ok(d) => d,
            Err(reason) => {
                let mut f = InstanceResult::failed(inst.instance_index, Step::Definition, reason, digests);
                f.generated_example = Some(example);
                return Ok(f);
            }
        };
        Ok(self.finish(inst, Some(example), definition, digests, Some(occurs)))
    }

    pub fn run_instance_ex(&self, inst: &BenchInstance, shots: usize) -> Result<InstanceResult, RunError> {
        let exemplars = self.shots(shots)?;
        let r = inst.resolve(self.lexicon)?;
        let example = r.target.example.as_deref().ok_or(RunError::MissingExample {
            index: inst.instance_index,
        })?;
        let mut digests = Vec::new();
        match self.generate(
            Direction::DefFromExample,
            &inst.word,
            &inst.pos,
            example,
            exemplars,
            &mut digests,
        )? {
            Ok(d) => Ok(self.finish(inst, None, d, digests, None)),
            Err(reason) => Ok(InstanceResult::failed(inst.instance_index, Step::Definition, reason, digests)),
        }
    }

    /// Runs every instance on the ambient rayon pool; results keep
    /// `instance_index` order.
    pub fn run_bench(&self, set: &BenchSet, variant: Variant, shots: usize) -> Result<EvalRun, RunError> {
        self.shots(shots)?;
        for inst in &set.instances {
            let r = inst.resolve(self.lexicon)?;
            if variant == Variant::SbEx && r.target.example.is_none() {
                return Err(RunError::MissingExample {
                    index: inst.instance_index,
                });
            }
        }
        let results: Vec<InstanceResult> = set
            .instances
            .par_iter()
            .map(|inst| match variant {
                Variant::SbDef => self.run_instance_def(inst, shots),
                Variant::SbEx => self.run_instance_ex(inst, shots),
            })
            .collect::<Result<_, _>>()?;
        let (scored, failed, correct, accuracy) = tally(results.iter().map(InstanceResult::outcome));
        let run = EvalRun {
            model: self.params.model.clone(),
            backend: self.chat.backend_id(),
            variant,
            shots,
            difficulty: set.manifest.difficulty,
            bench_digest: set.digest(),
            n: results.len(),
            results,
            scored,
            failed,
            correct,
            accuracy,
        };
        self.check_failures(failed, run.n, || Partial::Bench(run.clone()))?;
        Ok(run)
    }

    fn check_failures(&self, failed: usize, total: usize, partial: impl FnOnce() -> Partial) -> Result<(), RunError> {
        if total > 0 && failed as f64 / total as f64 > self.max_failure_rate {
            return Err(RunError::TooManyFailures {
                failed,
                total,
                max_rate: self.max_failure_rate,
                partial: Box::new(partial()),
            });
        }
        Ok(())
    }

    fn wic_pair(&self, index: usize, pair: &WicInstance, shots: &[FewShotExemplar], threshold: f64) -> Result<WicPairResult, RunError> {
        let mut digests = Vec::new();
        let mut defs = Vec::with_capacity(2);
        for ctx in [&pair.context1, &pair.context2] {
            match self.generate(Direction::DefFromExample, &pair.word, &pair.pos, ctx, shots, &mut digests)? {
                Ok(d) => defs.push(d),
                Err(reason) => {
                    return Ok(WicPairResult::failed(index, pair.gold, Step::Definition, reason, defs, digests))
                }
            }
        }
        let sim = self
            .embedder
            .embed(&defs[0])
            .and_then(|a| Ok(a.cosine(&self.embedder.embed(&defs[1])?)));
        match sim {
            Ok(similarity) => {
                let predicted = WicLabel::predict(similarity, threshold);
                Ok(WicPairResult {
                    index,
                    definition1: Some(defs[0].clone()),
                    definition2: Some(defs[1].clone()),
                    similarity: Some(similarity),
                    predicted: Some(predicted),
                    gold: pair.gold,
                    correct: predicted == pair.gold,
                    failure: None,
                    prompt_digests: digests,
                })
            }
            Err(e) => Ok(WicPairResult::failed(index, pair.gold, Step::Embedding, e.to_string(), defs, digests)),
        }
    }

    pub fn run_wic(&self, pairs: &[WicInstance], shots: usize, threshold: f64) -> Result<WicResult, RunError> {
        if pairs.is_empty() {
            return Err(RunError::NoPairs);
        }
        if !(threshold > 0.0 && threshold < 1.0) {
            return Err(RunError::BadThreshold(threshold));
        }
        let exemplars = self.shots(shots)?;
        let results: Vec<WicPairResult> = pairs
            .par_iter()
            .enumerate()
            .map(|(i, p)| self.wic_pair(i, p, exemplars, threshold))
            .collect::<Result<_, _>>()?;
        let (scored, failed, correct, accuracy) =
            tally(results.iter().map(|r| r.failure.is_none().then_some(r.correct)));
        let res = WicResult {
            model: self.params.model.clone(),
            backend: self.chat.backend_id(),
            shots,
            threshold,
            n: results.len(),
            results,
            scored,
            failed,
            correct,
            accuracy,
        };
        self.check_failures(failed, res.n, || Partial::Wic(res.clone()))?;
        Ok(res)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WicLabel {
    Same,
    Different,
}

impl WicLabel {
    /// `Same` iff `similarity > threshold`, strictly.
    pub fn predict(similarity: f64, threshold: f64) -> Self {
        if similarity > threshold {
            WicLabel::Same
        } else {
            WicLabel::Different
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WicInstance {
    pub word: String,
    pub pos: String,
    pub context1: String,
    pub context2: String,
    pub gold: WicLabel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WicPairResult {
    pub index: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub definition1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub definition2: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub similarity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicted: Option<WicLabel>,
    pub gold: WicLabel,
    pub correct: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
    pub prompt_digests: Vec<String>,
}

impl WicPairResult {
    fn failed(index: usize, gold: WicLabel, step: Step, reason: String, defs: Vec<String>, digests: Vec<String>) -> Self {
        let mut defs = defs.into_iter();
        WicPairResult {
            index,
            definition1: defs.next(),
            definition2: defs.next(),
            similarity: None,
            predicted: None,
            gold,
            correct: false,
            failure: Some(Failure { step, reason }),
            prompt_digests: digests,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WicResult {
    pub model: String,
    pub backend: String,
    pub shots: usize,
    pub threshold: f64,
    pub results: Vec<WicPairResult>,
    pub n: usize,
    pub scored: usize,
    pub failed: usize,
    pub correct: usize,
    pub accuracy: f64,
}

impl WicResult {
    pub fn summary(&self) -> Summary {
        Summary {
            kind: "wic".into(),
            model: self.model.clone(),
            accuracy: self.accuracy,
            variant: None,
            difficulty: None,
            shots: self.shots,
            n: self.n,
            scored: self.scored,
            failed: self.failed,
            correct: self.correct,
            bench_digest: None,
            threshold: Some(self.threshold),
            word_occurrence_rate: None,
        }
    }

    pub fn results_jsonl(&self) -> String {
        to_jsonl(&self.results)
    }
}

fn map_wic_pos(tag: &str) -> String {
    match tag {
        "N" | "n" | "NOUN" => "noun".into(),
        "V" | "v" | "VERB" => "verb".into(),
        "A" | "ADJ" => "adjective".into(),
        "R" | "ADV" => "adverb".into(),
        other => other.to_string(),
    }
}

/// Reads the original WiC layout: a tab-separated data file
/// (`word, pos, index pair, sentence1, sentence2`) and a gold file with one
/// `T`/`F` label per line. The index pair is not used.
pub fn import_wic(data: &str, gold: &str) -> Result<Vec<WicInstance>, RunError> {
    let labels: Vec<(usize, &str)> = gold
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    let rows: Vec<(usize, &str)> = data
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    if labels.len() != rows.len() {
        return Err(RunError::Parse {
            line: 0,
            message: format!("{} data rows but {} gold labels", rows.len(), labels.len()),
        });
    }
    rows.into_iter()
        .zip(labels)
        .map(|((i, row), (j, label))| {
            let cols: Vec<&str> = row.split('\t').collect();
            if cols.len() != 5 {
                return Err(RunError::Parse {
                    line: i + 1,
                    message: format!("expected 5 tab-separated fields, found {}", cols.len()),
                });
            }
            let gold = match label.trim() {
                "T" | "t" | "True" | "true" | "1" => WicLabel::Same,
                "F" | "f" | "False" | "false" | "0" => WicLabel::Different,
                other => {
                    return Err(RunError::Parse {
                        line: j + 1,
                        message: format!("unknown gold label {other:?}"),
                    })
                }
            };
            Ok(WicInstance {
                word: cols[0].trim().to_string(),
                pos: map_wic_pos(cols[1].trim()),
                context1: cols[3].trim().to_string(),
                context2: cols[4].trim().to_string(),
                gold,
            })
        })
        .collect()
}

pub fn load_wic_jsonl(path: impl AsRef<Path>) -> Result<Vec<WicInstance>, RunError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| RunError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_jsonl(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cleaning() {
        assert_eq!(
            clean_generation("\"a financial institution\"\n").as_deref(),
            Some("a financial institution")
        );
        assert_eq!(
            clean_generation("a financial institution").as_deref(),
            Some("a financial institution")
        );
        assert_eq!(clean_generation("   "), None);
        assert_eq!(clean_generation("\"\""), None);
        assert_eq!(clean_generation("`bank'").as_deref(), Some("bank"));
        assert_eq!(clean_generation("\u{201c}x y\u{201d}").as_deref(), Some("x y"));
        assert_eq!(clean_generation("line one\n\n  line two  ").as_deref(), Some("line one line two"));
        // only one pair is stripped
        assert_eq!(clean_generation("\"'inner'\"").as_deref(), Some("'inner'"));
        // a lone quote is kept
        assert_eq!(clean_generation("\"").as_deref(), Some("\""));
        assert_eq!(clean_generation("it's fine'").as_deref(), Some("it's fine'"));
    }

    #[test]
    fn strict_threshold() {
        assert_eq!(WicLabel::predict(0.49, 0.5), WicLabel::Different);
        assert_eq!(WicLabel::predict(0.5, 0.5), WicLabel::Different);
        assert_eq!(WicLabel::predict(0.51, 0.5), WicLabel::Same);
    }

    #[test]
    fn variant_parsing() {
        assert_eq!("def".parse::<Variant>().unwrap(), Variant::SbDef);
        assert_eq!("ex".parse::<Variant>().unwrap(), Variant::SbEx);
        assert!("both".parse::<Variant>().is_err());
    }

    #[test]
    fn tally_excludes_failures() {
        let (scored, failed, correct, acc) =
            tally([Some(true), Some(true), Some(true), Some(false)].into_iter());
        assert_eq!((scored, failed, correct, acc), (4, 0, 3, 0.75));
        let (scored, failed, _, acc) = tally([Some(true), None].into_iter());
        assert_eq!((scored, failed, acc), (1, 1, 1.0));
    }

    #[test]
    fn wic_import() {
        let data = "bank\tN\t3-4\tI went to the bank .\tThe bank was steep .\n\
                    run\tV\t1-2\tRun fast .\tThey run a shop .\n\
                    bed\tN\t0-1\tMake the bed .\tGo to bed .\n";
        let gold = "F\nF\nT\n";
        let pairs = import_wic(data, gold).unwrap();
        assert_eq!(pairs.len(), 3);
        assert_eq!(pairs[0].pos, "noun");
        assert_eq!(pairs[1].pos, "verb");
        assert_eq!(pairs[2].gold, WicLabel::Same);
        assert_eq!(pairs[0].context2, "The bank was steep .");
        assert!(import_wic(data, "F\nT\n").is_err());
        assert!(import_wic("bank\tN\tx\n", "T\n").is_err());
        assert!(import_wic("a\tN\t0-0\tx\ty\n", "maybe\n").is_err());
    }
}
