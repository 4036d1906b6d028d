//! Content-addressed response cache, one JSON file per [`CacheKey`].

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use super::{CacheKey, ChatModel, ChatParams, EmbeddingVector, Embedder, ModelError};
use crate::prompting::MessageSequence;

#[derive(Debug)]
pub struct DiskCache {
    root: PathBuf,
}

#[derive(Serialize, Deserialize)]
struct Record<T> {
    key: String,
    value: T,
}

fn cache_err(e: impl std::fmt::Display) -> ModelError {
    ModelError::Cache(e.to_string())
}

impl DiskCache {
    pub fn open(root: impl AsRef<Path>) -> Result<Self, ModelError> {
        let root = root.as_ref().to_path_buf();
        std::fs::create_dir_all(&root).map_err(cache_err)?;
        Ok(DiskCache { root })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn path_for(&self, key: &CacheKey) -> PathBuf {
        let k = key.as_str();
        self.root.join(&k[..2]).join(format!("{k}.json"))
    }

    pub fn get<T: DeserializeOwned>(&self, key: &CacheKey) -> Result<Option<T>, ModelError> {
        let path = self.path_for(key);
        let bytes = match std::fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(cache_err(e)),
        };
        let rec: Record<T> = serde_json::from_slice(&bytes)
            .map_err(|e| cache_err(format!("{}: {e}", path.display())))?;
        if rec.key != key.as_str() {
            return Err(cache_err(format!("{}: key mismatch", path.display())));
        }
        Ok(Some(rec.value))
    }

    /// Writes through a temp file in the same directory and renames it into place.
    pub fn put<T: Serialize>(&self, key: &CacheKey, value: &T) -> Result<(), ModelError> {
        let path = self.path_for(key);
        let dir = path.parent().expect("cache path has a parent");
        std::fs::create_dir_all(dir).map_err(cache_err)?;
        let rec = Record {
            key: key.as_str().to_string(),
            value,
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(cache_err)?;
        serde_json::to_writer(&mut tmp, &rec).map_err(cache_err)?;
        tmp.write_all(b"\n").map_err(cache_err)?;
        tmp.persist(&path).map_err(cache_err)?;
        Ok(())
    }
}

#[derive(Debug, Default)]
pub struct CacheCounters {
    hits: AtomicU64,
    misses: AtomicU64,
}

impl CacheCounters {
    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }
    pub fn misses(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }
}

#[derive(Serialize)]
struct ChatRequest<'a> {
    messages: &'a MessageSequence,
    params: &'a ChatParams,
}

pub struct CachedChat<M> {
    inner: M,
    cache: DiskCache,
    pub counters: CacheCounters,
}

impl<M: ChatModel> CachedChat<M> {
    pub fn new(inner: M, cache: DiskCache) -> Self {
        CachedChat {
            inner,
            cache,
            counters: CacheCounters::default(),
        }
    }

    pub fn key(&self, messages: &MessageSequence, params: &ChatParams) -> CacheKey {
        let request = serde_json::to_string(&ChatRequest { messages, params })
            .expect("request serializes");
        CacheKey::new(&self.inner.backend_id(), &params.model, &request)
    }

    pub fn inner(&self) -> &M {
        &self.inner
    }
}

impl<M: ChatModel> ChatModel for CachedChat<M> {
    fn backend_id(&self) -> String {
        self.inner.backend_id()
    }

    fn complete(&self, messages: &MessageSequence, params: &ChatParams) -> Result<String, ModelError> {
        let key = self.key(messages, params);
        if let Some(hit) = self.cache.get::<String>(&key)? {
            self.counters.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(hit);
        }
        self.counters.misses.fetch_add(1, Ordering::Relaxed);
        let out = self.inner.complete(messages, params)?;
        self.cache.put(&key, &out)?;
        Ok(out)
    }
}

pub struct CachedEmbedder<E> {
    inner: E,
    model: String,
    cache: DiskCache,
    pub counters: CacheCounters,
}

impl<E: Embedder> CachedEmbedder<E> {
    pub fn new(inner: E, model: &str, cache: DiskCache) -> Self {
        CachedEmbedder {
            inner,
            model: model.to_string(),
            cache,
            counters: CacheCounters::default(),
        }
    }

    fn key(&self, text: &str) -> CacheKey {
        CacheKey::new(&self.inner.backend_id(), &self.model, text)
    }
}

impl<E: Embedder> Embedder for CachedEmbedder<E> {
    fn backend_id(&self) -> String {
        self.inner.backend_id()
    }

    fn embed_raw(&self, text: &str) -> Result<Vec<f64>, ModelError> {
        Ok(self.embed(text)?.values().to_vec())
    }

    fn embed(&self, text: &str) -> Result<EmbeddingVector, ModelError> {
        let key = self.key(text);
        if let Some(hit) = self.cache.get::<EmbeddingVector>(&key)? {
            self.counters.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(hit);
        }
        self.counters.misses.fetch_add(1, Ordering::Relaxed);
        let v = self.inner.embed(text)?;
        self.cache.put(&key, &v)?;
        Ok(v)
    }
}
