//! Machine-readable dictionaries: words, their senses, and summary statistics.
//!
//! A lexicon file is UTF-8 JSON Lines, one entry per line:
//!
//! ```text
//! {"word": "bank", "senses": [{"id": "1", "pos": "noun", "definition": "...", "example": "..."}]}
//! ```
//!
//! `id` and `example` are optional. Missing ids are assigned as the zero-based
//! position of the sense within its entry.

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {message}")]
    Invalid { line: usize, message: String },
    #[error("duplicate word {word:?} at line {line} (first seen at line {first_line})")]
    DuplicateWord {
        word: String,
        line: usize,
        first_line: usize,
    },
    #[error("lexicon is empty")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sense {
    pub id: String,
    pub pos: String,
    pub definition: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub example: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub word: String,
    pub senses: Vec<Sense>,
}

impl Entry {
    pub fn sense(&self, id: &str) -> Option<&Sense> {
        self.senses.iter().find(|s| s.id == id)
    }

    /// Number of senses, `n_w`.
    pub fn sense_count(&self) -> usize {
        self.senses.len()
    }

    pub fn is_polysemous(&self) -> bool {
        self.senses.len() > 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    pub language: String,
    pub entries: Vec<Entry>,
    /// Hex SHA-256 of the bytes the lexicon was parsed from.
    pub source_digest: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSense {
    #[serde(default)]
    id: Option<String>,
    pos: String,
    definition: String,
    #[serde(default)]
    example: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    word: String,
    senses: Vec<RawSense>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Lexicon {
    /// Parses lexicon records from JSON Lines text. Blank lines are skipped.
    pub fn parse(language: &str, text: &str) -> Result<Self, LexiconError> {
        let mut entries = Vec::new();
        let mut seen: std::collections::HashMap<String, usize> = Default::default();
        for (idx, raw_line) in text.lines().enumerate() {
            let line = idx + 1;
            if raw_line.trim().is_empty() {
                continue;
            }
            let raw: RawEntry = serde_json::from_str(raw_line).map_err(|e| LexiconError::Parse {
                line,
                message: e.to_string(),
            })?;
            let entry = validate_entry(raw, line)?;
            if let Some(&first_line) = seen.get(&entry.word) {
                return Err(LexiconError::DuplicateWord {
                    word: entry.word,
                    line,
                    first_line,
                });
            }
            seen.insert(entry.word.clone(), line);
            entries.push(entry);
        }
        if entries.is_empty() {
            return Err(LexiconError::Empty);
        }
        Ok(Lexicon {
            language: language.to_string(),
            entries,
            source_digest: sha256_hex(text.as_bytes()),
        })
    }

    pub fn load(language: &str, path: impl AsRef<Path>) -> Result<Self, LexiconError> {
        let path = path.as_ref();
        let bytes = std::fs::read(path).map_err(|source| LexiconError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let text = String::from_utf8(bytes).map_err(|e| LexiconError::Parse {
            line: 0,
            message: format!("input is not valid UTF-8: {e}"),
        })?;
        Self::parse(language, &text)
    }

    /// Serializes back into the JSON Lines input format, with explicit sense ids.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for entry in &self.entries {
            out.push_str(&serde_json::to_string(entry).expect("entry serializes"));
            out.push('\n');
        }
        out
    }

    pub fn entry(&self, word: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.word == word)
    }

    /// Entries with more than one sense, in lexicon order.
    pub fn polysemous_entries(&self) -> Vec<&Entry> {
        self.entries.iter().filter(|e| e.is_polysemous()).collect()
    }

    pub fn stats(&self) -> Result<LexiconStats, LexiconError> {
        compute_stats(self)
    }
}

fn validate_entry(raw: RawEntry, line: usize) -> Result<Entry, LexiconError> {
    let invalid = |message: String| LexiconError::Invalid { line, message };
    if raw.word.trim().is_empty() {
        return Err(invalid("empty word".into()));
    }
    if raw.senses.is_empty() {
        return Err(invalid(format!("word {:?} has no senses", raw.word)));
    }
    let mut ids = HashSet::new();
    let mut senses = Vec::with_capacity(raw.senses.len());
    for (pos_idx, s) in raw.senses.into_iter().enumerate() {
        let id = s.id.unwrap_or_else(|| pos_idx.to_string());
        if s.definition.trim().is_empty() {
            return Err(invalid(format!("sense {id:?} has an empty definition")));
        }
        if s.pos.trim().is_empty() {
            return Err(invalid(format!("sense {id:?} has an empty part of speech")));
        }
        if !ids.insert(id.clone()) {
            return Err(invalid(format!("duplicate sense id {id:?}")));
        }
        senses.push(Sense {
            id,
            pos: s.pos,
            definition: s.definition,
            example: s.example,
        });
    }
    Ok(Entry {
        word: raw.word,
        senses,
    })
}

pub fn load_lexicon(language: &str, path: impl AsRef<Path>) -> Result<Lexicon, LexiconError> {
    Lexicon::load(language, path)
}

pub fn polysemous_entries(lex: &Lexicon) -> Vec<&Entry> {
    lex.polysemous_entries()
}

/// Character count used for length statistics: Unicode scalar values after NFC.
pub fn char_len(text: &str) -> usize {
    text.nfc().count()
}

/// Mean and standard deviation, both population (divide by N).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanStd {
    pub mean: f64,
    pub std: f64,
}

impl MeanStd {
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        Some(MeanStd {
            mean,
            std: var.sqrt(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LexiconStats {
    pub entries: usize,
    pub senses: usize,
    pub sense_density: MeanStd,
    pub definition_length: MeanStd,
    /// Absent when no sense carries an example.
    pub example_length: Option<MeanStd>,
}

impl LexiconStats {
    /// Plain-text table in the `mean ± std` layout, with `n/a` for absent rows.
    pub fn render_table(&self, label: &str) -> String {
        let cell = |m: Option<MeanStd>| match m {
            Some(m) => format!("{:.2} ± {:.1}", m.mean, m.std),
            None => "n/a".to_string(),
        };
        let rows = [
            ("Sense density", cell(Some(self.sense_density))),
            ("Definition length", cell(Some(self.definition_length))),
            ("Example length", cell(self.example_length)),
        ];
        let mut out = format!("{:<18} | {}\n", "Statistic", label);
        for (name, value) in rows {
            out.push_str(&format!("{name:<18} | {value}\n"));
        }
        out
    }
}

pub fn compute_stats(lex: &Lexicon) -> Result<LexiconStats, LexiconError> {
    if lex.entries.is_empty() {
        return Err(LexiconError::Empty);
    }
    let density: Vec<f64> = lex.entries.iter().map(|e| e.senses.len() as f64).collect();
    let senses = lex.entries.iter().flat_map(|e| e.senses.iter());
    let def_lens: Vec<f64> = senses
        .clone()
        .map(|s| char_len(&s.definition) as f64)
        .collect();
    let ex_lens: Vec<f64> = senses
        .filter_map(|s| s.example.as_deref())
        .map(|e| char_len(e) as f64)
        .collect();
    Ok(LexiconStats {
        entries: lex.entries.len(),
        senses: def_lens.len(),
        sense_density: MeanStd::of(&density).expect("non-empty"),
        definition_length: MeanStd::of(&def_lens).expect("every entry has a sense"),
        example_length: MeanStd::of(&ex_lens),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(word: &str, defs: &[(&str, Option<&str>)]) -> String {
        let senses: Vec<serde_json::Value> = defs
            .iter()
            .map(|(d, e)| {
                let mut v = serde_json::json!({"pos": "noun", "definition": d});
                if let Some(e) = e {
                    v["example"] = serde_json::json!(e);
                }
                v
            })
            .collect();
        serde_json::json!({"word": word, "senses": senses}).to_string()
    }

    #[test]
    fn parses_two_entries() {
        let text = format!(
            "{}\n{}\n",
            rec("bank", &[("a financial institution", Some("She went to the bank.")), ("a river side", None)]),
            rec("bat", &[("a flying mammal", None)])
        );
        let lex = Lexicon::parse("English", &text).unwrap();
        assert_eq!(lex.entries.len(), 2);
        assert_eq!(lex.entries[0].sense_count(), 2);
        assert_eq!(lex.entries[1].sense_count(), 1);
        assert_eq!(lex.entries[0].senses[1].id, "1");
        assert_eq!(
            lex.entries[0].senses[0].example.as_deref(),
            Some("She went to the bank.")
        );
    }

    #[test]
    fn missing_example_is_absent() {
        let lex = Lexicon::parse("English", &rec("bat", &[("a flying mammal", None)])).unwrap();
        assert!(lex.entries[0].senses[0].example.is_none());
    }

    #[test]
    fn missing_definition_names_line() {
        let text = format!(
            "{}\n{}\n",
            rec("bat", &[("a flying mammal", None)]),
            r#"{"word": "bank", "senses": [{"pos": "noun"}]}"#
        );
        let err = Lexicon::parse("English", &text).unwrap_err();
        assert!(matches!(err, LexiconError::Parse { line: 2, .. }), "{err}");
        assert!(err.to_string().starts_with("line 2:"));
    }

    #[test]
    fn duplicate_word_rejected() {
        let text = format!(
            "{}\n{}\n",
            rec("bat", &[("a flying mammal", None)]),
            rec("bat", &[("a club", None)])
        );
        let err = Lexicon::parse("English", &text).unwrap_err();
        assert!(matches!(err, LexiconError::DuplicateWord { line: 2, first_line: 1, .. }));
    }

    #[test]
    fn empty_input_rejected() {
        assert!(matches!(Lexicon::parse("English", ""), Err(LexiconError::Empty)));
        assert!(matches!(Lexicon::parse("English", "\n  \n"), Err(LexiconError::Empty)));
    }

    #[test]
    fn blank_definition_and_duplicate_ids_rejected() {
        let blank = r#"{"word": "x", "senses": [{"pos": "noun", "definition": "   "}]}"#;
        assert!(matches!(Lexicon::parse("English", blank), Err(LexiconError::Invalid { line: 1, .. })));
        let dup = r#"{"word": "x", "senses": [{"id": "a", "pos": "n", "definition": "p"}, {"id": "a", "pos": "n", "definition": "q"}]}"#;
        assert!(matches!(Lexicon::parse("English", dup), Err(LexiconError::Invalid { .. })));
        let no_pos = r#"{"word": "x", "senses": [{"pos": "", "definition": "p"}]}"#;
        assert!(Lexicon::parse("English", no_pos).is_err());
        let no_senses = r#"{"word": "x", "senses": []}"#;
        assert!(Lexicon::parse("English", no_senses).is_err());
    }

    #[test]
    fn polysemous_filter() {
        let text = [
            rec("one", &[("a", None)]),
            rec("two", &[("a", None), ("b", None)]),
            rec("three", &[("a", None), ("b", None), ("c", None)]),
        ]
        .join("\n");
        let lex = Lexicon::parse("English", &text).unwrap();
        let words: Vec<_> = lex.polysemous_entries().iter().map(|e| e.word.as_str()).collect();
        assert_eq!(words, ["two", "three"]);

        let mono = Lexicon::parse("English", &rec("one", &[("a", None)])).unwrap();
        assert!(mono.polysemous_entries().is_empty());

        let empty = Lexicon {
            language: "English".into(),
            entries: vec![],
            source_digest: String::new(),
        };
        assert!(polysemous_entries(&empty).is_empty());
        assert!(matches!(compute_stats(&empty), Err(LexiconError::Empty)));
    }

    #[test]
    fn stats_population_std() {
        let text = [
            rec("two", &[("ab", None), ("abcd", None)]),
            rec("four", &[("ab", None), ("abcd", None), ("ab", None), ("abcd", None)]),
        ]
        .join("\n");
        let stats = Lexicon::parse("English", &text).unwrap().stats().unwrap();
        assert_eq!(stats.sense_density, MeanStd { mean: 3.0, std: 1.0 });
        assert_eq!(stats.definition_length.mean, 3.0);
        assert_eq!(stats.definition_length.std, 1.0);
        assert!(stats.example_length.is_none());
        assert!(stats.render_table("English").contains("Example length     | n/a"));
    }

    #[test]
    fn single_sense_std_is_zero() {
        let stats = Lexicon::parse("English", &rec("x", &[("abc", Some("abc x"))]))
            .unwrap()
            .stats()
            .unwrap();
        assert_eq!(stats.sense_density.std, 0.0);
        assert_eq!(stats.definition_length.std, 0.0);
        assert_eq!(stats.example_length.unwrap().std, 0.0);
    }

    #[test]
    fn lengths_count_nfc_scalars() {
        // "e" + combining acute composes to a single scalar under NFC.
        assert_eq!(char_len("cafe\u{301}"), 4);
        assert_eq!(char_len("café"), 4);
    }

    #[test]
    fn digest_tracks_bytes() {
        let a = Lexicon::parse("English", &rec("x", &[("abc", None)])).unwrap();
        let b = Lexicon::parse("English", &rec("x", &[("abc", None)])).unwrap();
        let c = Lexicon::parse("English", &rec("x", &[("abd", None)])).unwrap();
        assert_eq!(a.source_digest, b.source_digest);
        assert_ne!(a.source_digest, c.source_digest);
    }
}
