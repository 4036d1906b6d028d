//! Deterministic offline backends.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use unicode_normalization::UnicodeNormalization;

use super::{ChatModel, ChatParams, EmbeddingVector, Embedder, ModelError};
use crate::benchgen::BenchSet;
use crate::lexicon::{sha256_hex, Lexicon};
use crate::prompting::{Direction, MessageSequence, Prompter};

pub const HASH_DIM: usize = 256;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    bytes
        .iter()
        .fold(FNV_OFFSET, |h, &b| (h ^ b as u64).wrapping_mul(FNV_PRIME))
}

/// Raw trigram count vector: NFC, lowercase, character trigrams hashed with
/// FNV-1a into 256 buckets. Texts shorter than three characters count as a
/// single gram.
pub fn hash_trigram_counts(text: &str) -> Vec<f64> {
    let chars: Vec<char> = text.nfc().collect::<String>().to_lowercase().chars().collect();
    let mut counts = vec![0.0; HASH_DIM];
    let mut bump = |gram: &[char]| {
        let s: String = gram.iter().collect();
        counts[(fnv1a64(s.as_bytes()) % HASH_DIM as u64) as usize] += 1.0;
    };
    if chars.len() < 3 {
        if !chars.is_empty() {
            bump(&chars);
        }
    } else {
        chars.windows(3).for_each(&mut bump);
    }
    counts
}

/// Unit-normalized trigram hash embedding. Empty text maps to a fixed
/// basis vector so the function stays total.
pub fn mock_hash_embed(text: &str) -> EmbeddingVector {
    let mut counts = hash_trigram_counts(text);
    if counts.iter().all(|&c| c == 0.0) {
        counts[0] = 1.0;
    }
    EmbeddingVector::normalized(counts).expect("non-zero count vector")
}

#[derive(Debug, Clone, Copy, Default)]
pub struct HashEmbedder;

impl Embedder for HashEmbedder {
    fn backend_id(&self) -> String {
        "mock:hash-trigram-256".into()
    }

    fn embed_raw(&self, text: &str) -> Result<Vec<f64>, ModelError> {
        Ok(mock_hash_embed(text).values().to_vec())
    }
}

/// Digest of a full message sequence, used as the lookup key of scripted mocks
/// and recorded alongside results.
pub fn prompt_digest(messages: &MessageSequence) -> String {
    sha256_hex(serde_json::to_string(messages).expect("serializes").as_bytes())
}

/// Lookup-table model keyed by [`prompt_digest`].
#[derive(Debug, Default)]
pub struct ScriptedChat {
    name: String,
    table: HashMap<String, String>,
    calls: AtomicUsize,
}

impl ScriptedChat {
    pub fn new(name: &str) -> Self {
        ScriptedChat {
            name: name.to_string(),
            ..Default::default()
        }
    }

    pub fn insert(&mut self, messages: &MessageSequence, response: &str) {
        self.table.insert(prompt_digest(messages), response.to_string());
    }

    pub fn insert_digest(&mut self, digest: &str, response: &str) {
        self.table.insert(digest.to_string(), response.to_string());
    }

    pub fn calls(&self) -> usize {
        self.calls.load(Ordering::Relaxed)
    }
}

impl ChatModel for ScriptedChat {
    fn backend_id(&self) -> String {
        format!("mock:scripted:{}", self.name)
    }

    fn complete(&self, messages: &MessageSequence, _params: &ChatParams) -> Result<String, ModelError> {
        self.calls.fetch_add(1, Ordering::Relaxed);
        let digest = prompt_digest(messages);
        self.table
            .get(&digest)
            .cloned()
            .ok_or_else(|| ModelError::Other(format!("no scripted response for prompt {digest}")))
    }
}

/// Returns the definition or example quoted in the final user prompt.
#[derive(Debug, Clone)]
pub struct EchoChat {
    prompter: Prompter,
}

impl EchoChat {
    pub fn new(prompter: Prompter) -> Self {
        EchoChat { prompter }
    }
}

impl ChatModel for EchoChat {
    fn backend_id(&self) -> String {
        "mock:echo".into()
    }

    fn complete(&self, messages: &MessageSequence, _params: &ChatParams) -> Result<String, ModelError> {
        self.prompter
            .parse_user_prompt(messages.last_user())
            .map(|p| p.content)
            .ok_or_else(|| ModelError::Protocol("prompt does not match the templates".into()))
    }
}

#[derive(Debug, Clone)]
pub struct ConstantChat {
    reply: String,
}

impl ConstantChat {
    pub fn new(reply: &str) -> Self {
        ConstantChat {
            reply: reply.to_string(),
        }
    }
}

impl ChatModel for ConstantChat {
    fn backend_id(&self) -> String {
        format!("mock:constant:{}", sha256_hex(self.reply.as_bytes()).get(..12).unwrap_or(""))
    }

    fn complete(&self, _messages: &MessageSequence, _params: &ChatParams) -> Result<String, ModelError> {
        Ok(self.reply.clone())
    }
}

/// How a [`SenseOracleChat`] answers for each benchmark instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleBehavior {
    /// Always regenerates the target definition.
    Target,
    /// Always regenerates the distractor definition.
    Distractor,
    /// Regenerates the distractor for a deterministic `error_rate` fraction
    /// of instances, chosen by hashing `seed` with the instance's senses.
    Noisy { error_rate: f64, seed: u64 },
}

/// Mock that knows the answer key of a benchmark.
///
/// Given a definition-to-example prompt for a target definition it answers
/// with the chosen definition itself, and given the dictionary example of the
/// target it answers with the chosen definition. Any other definition-from-
/// example prompt is echoed back, so the second step of the round trip
/// returns whatever the first step produced.
#[derive(Debug, Clone)]
pub struct SenseOracleChat {
    name: String,
    prompter: Prompter,
    table: HashMap<(Direction, String, String), String>,
}

impl SenseOracleChat {
    pub fn for_bench(
        name: &str,
        prompter: Prompter,
        lexicon: &Lexicon,
        bench: &BenchSet,
        behavior: OracleBehavior,
    ) -> Result<Self, ModelError> {
        let mut table = HashMap::new();
        for inst in &bench.instances {
            let resolved = inst
                .resolve(lexicon)
                .map_err(|e| ModelError::InvalidInput(e.to_string()))?;
            let wrong = match behavior {
                OracleBehavior::Target => false,
                OracleBehavior::Distractor => true,
                OracleBehavior::Noisy { error_rate, seed } => {
                    let key = format!("{seed}\u{0}{}\u{0}{}", inst.word, inst.target_sense_id);
                    let u = (fnv1a64(key.as_bytes()) >> 11) as f64 / (1u64 << 53) as f64;
                    u < error_rate
                }
            };
            let answer = if wrong {
                resolved.distractor.definition.clone()
            } else {
                resolved.target.definition.clone()
            };
            table.insert(
                (
                    Direction::ExampleFromDef,
                    inst.word.clone(),
                    resolved.target.definition.clone(),
                ),
                answer.clone(),
            );
            if let Some(ex) = &resolved.target.example {
                table.insert((Direction::DefFromExample, inst.word.clone(), ex.clone()), answer);
            }
        }
        Ok(SenseOracleChat {
            name: name.to_string(),
            prompter,
            table,
        })
    }
}

impl ChatModel for SenseOracleChat {
    fn backend_id(&self) -> String {
        format!("mock:oracle:{}", self.name)
    }

    fn complete(&self, messages: &MessageSequence, _params: &ChatParams) -> Result<String, ModelError> {
        let parsed = self
            .prompter
            .parse_user_prompt(messages.last_user())
            .ok_or_else(|| ModelError::Protocol("prompt does not match the templates".into()))?;
        let key = (parsed.direction, parsed.word, parsed.content);
        Ok(self.table.get(&key).cloned().unwrap_or(key.2))
    }
}
