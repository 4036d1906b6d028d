//! Chat-completion and embedding backends.
//!
//! Every backend implements [`ChatModel`] or [`Embedder`]. HTTP backends speak
//! the common chat-completions / embeddings JSON shapes, mocks are fully
//! deterministic, and [`cache`] wraps either kind with a content-addressed
//! on-disk response store.

pub mod cache;
pub mod http;
pub mod mock;

use std::time::Duration;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::prompting::MessageSequence;

pub use cache::{CachedChat, CachedEmbedder, DiskCache};
pub use http::{HttpChat, HttpEmbedder, Transport, UreqTransport};
pub use mock::{mock_hash_embed, ConstantChat, EchoChat, HashEmbedder, ScriptedChat};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("transport error: {0}")]
    Transport(String),
    #[error("backend returned HTTP {status}: {body}")]
    Status { status: u16, body: String },
    #[error("malformed response: {0}")]
    Protocol(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("giving up after {attempts} attempts: {last}")]
    Exhausted { attempts: u32, last: Box<ModelError> },
    #[error("cache error: {0}")]
    Cache(String),
    #[error("{0}")]
    Other(String),
}

impl ModelError {
    /// Transport failures, 5xx and 429 are worth retrying.
    pub fn is_retryable(&self) -> bool {
        match self {
            ModelError::Transport(_) => true,
            ModelError::Status { status, .. } => *status >= 500 || *status == 429,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChatParams {
    pub model: String,
    #[serde(default)]
    pub temperature: f64,
    #[serde(default = "default_top_p")]
    pub nucleus_mass: f64,
    #[serde(default = "default_max_tokens")]
    pub max_output_tokens: u32,
}

fn default_top_p() -> f64 {
    1.0
}

fn default_max_tokens() -> u32 {
    256
}

impl ChatParams {
    /// Greedy decoding over the wire: temperature 0, top-p 1.
    pub fn greedy(model: &str) -> Self {
        ChatParams {
            model: model.to_string(),
            temperature: 0.0,
            nucleus_mass: 1.0,
            max_output_tokens: default_max_tokens(),
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if self.temperature.is_nan() || self.temperature < 0.0 {
            return Err(ModelError::InvalidInput(format!(
                "temperature must be >= 0, got {}",
                self.temperature
            )));
        }
        if !(self.nucleus_mass > 0.0 && self.nucleus_mass <= 1.0) {
            return Err(ModelError::InvalidInput(format!(
                "nucleus mass must be in (0, 1], got {}",
                self.nucleus_mass
            )));
        }
        Ok(())
    }
}

/// Unit-length embedding. Dot products between two of these are cosines.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingVector {
    values: Vec<f64>,
}

impl EmbeddingVector {
    /// L2-normalizes `raw`. Fails on empty, non-finite, or all-zero input.
    pub fn normalized(raw: Vec<f64>) -> Result<Self, ModelError> {
        if raw.is_empty() {
            return Err(ModelError::Protocol("empty embedding".into()));
        }
        if raw.iter().any(|v| !v.is_finite()) {
            return Err(ModelError::Protocol("non-finite embedding component".into()));
        }
        let norm = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(ModelError::Protocol("zero-norm embedding".into()));
        }
        Ok(EmbeddingVector {
            values: raw.into_iter().map(|v| v / norm).collect(),
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Dot product, clamped to [-1, 1] against rounding drift.
    pub fn cosine(&self, other: &EmbeddingVector) -> f64 {
        assert_eq!(self.dim(), other.dim(), "embedding dimensions differ");
        let dot: f64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum();
        dot.clamp(-1.0, 1.0)
    }
}

/// Content address of a backend request.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CacheKey(String);

impl CacheKey {
    pub fn new(backend: &str, model: &str, request: &str) -> Self {
        let mut h = Sha256::new();
        for part in [backend, model, request] {
            h.update((part.len() as u64).to_le_bytes());
            h.update(part.as_bytes());
        }
        CacheKey(hex::encode(h.finalize()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl std::fmt::Display for CacheKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

pub trait ChatModel: Send + Sync {
    /// Stable identifier of the backend (endpoint or mock kind).
    fn backend_id(&self) -> String;

    fn complete(&self, messages: &MessageSequence, params: &ChatParams) -> Result<String, ModelError>;
}

pub trait Embedder: Send + Sync {
    fn backend_id(&self) -> String;

    /// Backend output before normalization.
    fn embed_raw(&self, text: &str) -> Result<Vec<f64>, ModelError>;

    fn embed(&self, text: &str) -> Result<EmbeddingVector, ModelError> {
        if text.trim().is_empty() {
            return Err(ModelError::InvalidInput("cannot embed empty text".into()));
        }
        EmbeddingVector::normalized(self.embed_raw(text)?)
    }
}

impl<T: ChatModel + ?Sized> ChatModel for &T {
    fn backend_id(&self) -> String {
        (**self).backend_id()
    }
    fn complete(&self, messages: &MessageSequence, params: &ChatParams) -> Result<String, ModelError> {
        (**self).complete(messages, params)
    }
}

impl<T: ChatModel + ?Sized> ChatModel for Box<T> {
    fn backend_id(&self) -> String {
        (**self).backend_id()
    }
    fn complete(&self, messages: &MessageSequence, params: &ChatParams) -> Result<String, ModelError> {
        (**self).complete(messages, params)
    }
}

impl<T: Embedder + ?Sized> Embedder for &T {
    fn backend_id(&self) -> String {
        (**self).backend_id()
    }
    fn embed_raw(&self, text: &str) -> Result<Vec<f64>, ModelError> {
        (**self).embed_raw(text)
    }
    fn embed(&self, text: &str) -> Result<EmbeddingVector, ModelError> {
        (**self).embed(text)
    }
}

impl<T: Embedder + ?Sized> Embedder for Box<T> {
    fn backend_id(&self) -> String {
        (**self).backend_id()
    }
    fn embed_raw(&self, text: &str) -> Result<Vec<f64>, ModelError> {
        (**self).embed_raw(text)
    }
    fn embed(&self, text: &str) -> Result<EmbeddingVector, ModelError> {
        (**self).embed(text)
    }
}

pub fn embed_text(embedder: &dyn Embedder, text: &str) -> Result<EmbeddingVector, ModelError> {
    embedder.embed(text)
}

/// Exponential backoff: `retries` extra attempts after the first, waiting
/// `base_delay * factor^k` before retry `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RetryPolicy {
    pub retries: u32,
    #[serde(with = "millis")]
    pub base_delay: Duration,
    pub factor: f64,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        RetryPolicy {
            retries: 3,
            base_delay: Duration::from_secs(1),
            factor: 2.0,
        }
    }
}

impl RetryPolicy {
    pub fn no_delay(retries: u32) -> Self {
        RetryPolicy {
            retries,
            base_delay: Duration::ZERO,
            factor: 2.0,
        }
    }

    pub fn delay(&self, retry: u32) -> Duration {
        self.base_delay.mul_f64(self.factor.powi(retry as i32))
    }

    pub fn run<T>(&self, mut op: impl FnMut() -> Result<T, ModelError>) -> Result<T, ModelError> {
        let mut attempt = 0;
        loop {
            match op() {
                Ok(v) => return Ok(v),
                Err(e) if e.is_retryable() && attempt < self.retries => {
                    std::thread::sleep(self.delay(attempt));
                    attempt += 1;
                }
                Err(e) if e.is_retryable() => {
                    return Err(ModelError::Exhausted {
                        attempts: attempt + 1,
                        last: Box::new(e),
                    })
                }
                Err(e) => return Err(e),
            }
        }
    }
}

mod millis {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(d.as_millis() as u64)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_millis(u64::deserialize(d)?))
    }
}
