//! Dictionary round-trip benchmark for LLM semantic competence.
//!
//! A model is shown a dictionary sense, asked to produce a usage example and
//! then a definition from that example; the regenerated definition is scored
//! against the original (target) sense and a different sense of the same word
//! (distractor) with a sentence encoder. Model rankings are compared with
//! Word-in-Context rankings through Spearman correlation and bootstrap curves.

pub mod analysis;
pub mod benchgen;
pub mod lexicon;
pub mod modelio;
pub mod prompting;
pub mod runner;

pub use analysis::{
    bootstrap_curve, rank_with_ties, spearman, BootstrapCurve, BootstrapOptions, CorrectnessMatrix,
    CorrelationResult, RankingTable,
};
pub use benchgen::{build_bench_set, build_bench_sets, BenchInstance, BenchParams, BenchSet, Difficulty};
pub use lexicon::{compute_stats, load_lexicon, Entry, Lexicon, LexiconStats, Sense};
pub use modelio::{ChatModel, ChatParams, Embedder, EmbeddingVector, ModelError, RetryPolicy};
pub use prompting::{Direction, FewShotExemplar, MessageSequence, PromptPair, Prompter};
pub use runner::{clean_generation, EvalRun, Harness, InstanceResult, Summary, Variant, WicInstance, WicLabel, WicResult};
