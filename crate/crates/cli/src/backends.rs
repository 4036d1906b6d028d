//! Chooses chat and embedding backends from the config.
//!
//! Mock chat models (`--mock`):
//! - `oracle`: answers with the target definition
//! - `adversary`: answers with the distractor definition
//! - `noisy-<pct>`: the distractor for about `pct`% of instances
//! - `echo`: returns the quoted definition or example unchanged
//! - `same`: the same fixed sentence for every prompt
//! - `constant:<text>`: `<text>` for every prompt

use anyhow::{anyhow, bail};
use sembench_core::benchgen::BenchSet;
use sembench_core::modelio::cache::{CachedChat, CachedEmbedder, DiskCache};
use sembench_core::modelio::http::{HttpChat, HttpEmbedder};
use sembench_core::modelio::mock::{ConstantChat, EchoChat, HashEmbedder, OracleBehavior, SenseOracleChat};
use sembench_core::{ChatModel, Embedder, Lexicon, Prompter};

use crate::config::RunConfig;

/// Credential for HTTP backends; never read from the config file.
pub const API_KEY_ENV: &str = "SEMBENCH_API_KEY";

const SAME_REPLY: &str = "a fixed definition returned for every prompt";

fn api_key() -> Option<String> {
    std::env::var(API_KEY_ENV).ok().filter(|k| !k.is_empty())
}

fn cache(cfg: &RunConfig) -> anyhow::Result<Option<DiskCache>> {
    cfg.cache_dir
        .as_ref()
        .map(|dir| DiskCache::open(dir).map_err(|e| anyhow!(e)))
        .transpose()
}

pub fn embedder(cfg: &RunConfig) -> anyhow::Result<Box<dyn Embedder>> {
    if cfg.mock {
        return Ok(Box::new(HashEmbedder));
    }
    let (Some(endpoint), Some(model)) = (&cfg.embedding.endpoint, &cfg.embedding.model) else {
        bail!("no embedding endpoint configured: set [embedding] endpoint and model, or pass --mock");
    };
    let http = HttpEmbedder::new(endpoint, model, api_key(), cfg.retry.clone());
    Ok(match cache(cfg)? {
        Some(c) => Box::new(CachedEmbedder::new(http, model, c)),
        None => Box::new(http),
    })
}

/// What a mock model needs to know about the task it is run on.
pub enum MockContext<'a> {
    Bench(&'a Lexicon, &'a BenchSet),
    Wic,
}

fn mock_chat(name: &str, prompter: &Prompter, seed: u64, ctx: MockContext<'_>) -> anyhow::Result<Box<dyn ChatModel>> {
    if let Some(text) = name.strip_prefix("constant:") {
        return Ok(Box::new(ConstantChat::new(text)));
    }
    match name {
        "echo" => return Ok(Box::new(EchoChat::new(prompter.clone()))),
        "same" => return Ok(Box::new(ConstantChat::new(SAME_REPLY))),
        _ => {}
    }
    let behavior = match name {
        "oracle" => OracleBehavior::Target,
        "adversary" => OracleBehavior::Distractor,
        _ => match name.strip_prefix("noisy-").map(str::parse::<u32>) {
            Some(Ok(pct)) if pct <= 100 => OracleBehavior::Noisy {
                error_rate: pct as f64 / 100.0,
                seed,
            },
            _ => bail!(
                "unknown mock model {name:?} (oracle, adversary, noisy-<pct>, echo, same, constant:<text>)"
            ),
        },
    };
    match ctx {
        MockContext::Bench(lex, set) => Ok(Box::new(
            SenseOracleChat::for_bench(name, prompter.clone(), lex, set, behavior).map_err(|e| anyhow!(e))?,
        )),
        // Without an answer key the oracle family just echoes.
        MockContext::Wic => Ok(Box::new(EchoChat::new(prompter.clone()))),
    }
}

pub fn chat(cfg: &RunConfig, model: &str, prompter: &Prompter, ctx: MockContext<'_>) -> anyhow::Result<Box<dyn ChatModel>> {
    if cfg.mock {
        return mock_chat(model, prompter, cfg.bench.seed, ctx);
    }
    let Some(endpoint) = &cfg.chat.endpoint else {
        bail!("no chat endpoint configured: set [chat] endpoint, or pass --mock");
    };
    let http = HttpChat::new(endpoint, api_key(), cfg.retry.clone());
    Ok(match cache(cfg)? {
        Some(c) => Box::new(CachedChat::new(http, c)),
        None => Box::new(http),
    })
}
