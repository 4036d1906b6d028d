//! Prompt templates and chat message assembly.
//!
//! Two directions exist: generating a usage example from a definition, and
//! generating a definition from a usage example. Each direction has a system
//! and a user template with `{language}`, `{part-of-speech}`, `{word}`,
//! `{definition}` and `{example}` placeholders.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const PLACEHOLDERS: [&str; 5] = ["language", "part-of-speech", "word", "definition", "example"];

const EXAMPLE_SYSTEM: &str = include_str!("../templates/example_system.txt");
const EXAMPLE_USER: &str = include_str!("../templates/example_user.txt");
const DEFINITION_SYSTEM: &str = include_str!("../templates/definition_system.txt");
const DEFINITION_USER: &str = include_str!("../templates/definition_user.txt");

#[derive(Debug, Error)]
pub enum PromptError {
    #[error("empty value for {{{0}}}")]
    EmptyField(&'static str),
    #[error("template {template} references unknown placeholder {{{name}}}")]
    UnknownPlaceholder { template: String, name: String },
    #[error("template {template} has no value for {{{name}}}")]
    MissingValue { template: String, name: String },
    #[error("{0} exemplars requested, allowed counts are {1:?}")]
    ShotCount(usize, Vec<usize>),
    #[error("exemplar {index}: {message}")]
    Exemplar { index: usize, message: String },
    #[error("invalid message sequence: {0}")]
    Sequence(String),
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    ExampleFromDef,
    DefFromExample,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptPair {
    pub system: String,
    pub user: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FewShotExemplar {
    pub word: String,
    pub pos: String,
    pub definition: String,
    pub example: String,
}

impl FewShotExemplar {
    fn validate(&self, index: usize) -> Result<(), PromptError> {
        for (name, v) in [
            ("word", &self.word),
            ("pos", &self.pos),
            ("definition", &self.definition),
            ("example", &self.example),
        ] {
            if v.trim().is_empty() {
                return Err(PromptError::Exemplar {
                    index,
                    message: format!("empty {name}"),
                });
            }
        }
        Ok(())
    }
}

/// Reads a JSON Lines file of exemplars.
pub fn load_exemplars(path: impl AsRef<Path>) -> Result<Vec<FewShotExemplar>, PromptError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| PromptError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_exemplars(&text)
}

pub fn parse_exemplars(text: &str) -> Result<Vec<FewShotExemplar>, PromptError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let ex: FewShotExemplar = serde_json::from_str(line).map_err(|e| PromptError::Exemplar {
            index: i,
            message: e.to_string(),
        })?;
        ex.validate(out.len())?;
        out.push(ex);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    System,
    User,
    Assistant,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::System => "system",
            Role::User => "user",
            Role::Assistant => "assistant",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Message {
    pub role: Role,
    pub content: String,
}

/// A chat transcript: one leading system message, then alternating
/// user/assistant turns ending on a user turn.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Message>", into = "Vec<Message>")]
pub struct MessageSequence(Vec<Message>);

impl MessageSequence {
    pub fn new(messages: Vec<Message>) -> Result<Self, PromptError> {
        let bad = |m: &str| Err(PromptError::Sequence(m.to_string()));
        match messages.first() {
            Some(m) if m.role == Role::System => {}
            _ => return bad("first message must be the system prompt"),
        }
        for (i, m) in messages.iter().enumerate().skip(1) {
            let expected = if i % 2 == 1 { Role::User } else { Role::Assistant };
            if m.role != expected {
                return bad(&format!("message {i} should be {}", expected.as_str()));
            }
        }
        if messages.len() < 2 || messages.last().map(|m| m.role) != Some(Role::User) {
            return bad("last message must be a user turn");
        }
        Ok(MessageSequence(messages))
    }

    pub fn messages(&self) -> &[Message] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last_user(&self) -> &str {
        &self.0.last().expect("validated non-empty").content
    }
}

impl TryFrom<Vec<Message>> for MessageSequence {
    type Error = PromptError;
    fn try_from(v: Vec<Message>) -> Result<Self, Self::Error> {
        MessageSequence::new(v)
    }
}

impl From<MessageSequence> for Vec<Message> {
    fn from(s: MessageSequence) -> Self {
        s.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Segment {
    Literal(String),
    Slot(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    name: String,
    segments: Vec<Segment>,
}

impl Template {
    pub fn parse(name: &str, source: &str) -> Result<Self, PromptError> {
        let mut segments = Vec::new();
        let mut rest = source;
        while let Some(start) = rest.find('{') {
            let Some(len) = rest[start..].find('}') else {
                break;
            };
            let slot = &rest[start + 1..start + len];
            if !PLACEHOLDERS.contains(&slot) {
                return Err(PromptError::UnknownPlaceholder {
                    template: name.to_string(),
                    name: slot.to_string(),
                });
            }
            if start > 0 {
                segments.push(Segment::Literal(rest[..start].to_string()));
            }
            segments.push(Segment::Slot(slot.to_string()));
            rest = &rest[start + len + 1..];
        }
        if !rest.is_empty() {
            segments.push(Segment::Literal(rest.to_string()));
        }
        Ok(Template {
            name: name.to_string(),
            segments,
        })
    }

    /// Single-pass substitution: values are inserted verbatim and never rescanned.
    pub fn render(&self, values: &[(&str, &str)]) -> Result<String, PromptError> {
        let mut out = String::new();
        for seg in &self.segments {
            match seg {
                Segment::Literal(s) => out.push_str(s),
                Segment::Slot(name) => {
                    let value = values
                        .iter()
                        .find(|(k, _)| k == name)
                        .map(|(_, v)| *v)
                        .ok_or_else(|| PromptError::MissingValue {
                            template: self.name.clone(),
                            name: name.clone(),
                        })?;
                    out.push_str(value);
                }
            }
        }
        Ok(out)
    }

    /// Recovers slot values from text rendered by this template. Returns `None`
    /// when the literal parts do not line up.
    pub fn extract(&self, text: &str) -> Option<Vec<(String, String)>> {
        let mut values = Vec::new();
        let mut rest = text;
        let mut pending: Option<&str> = None;
        let last_literal = self
            .segments
            .iter()
            .rposition(|s| matches!(s, Segment::Literal(_)));
        for (i, seg) in self.segments.iter().enumerate() {
            match seg {
                Segment::Slot(name) => pending = Some(name),
                Segment::Literal(lit) => match pending.take() {
                    None => rest = rest.strip_prefix(lit.as_str())?,
                    Some(name) => {
                        let at = if Some(i) == last_literal {
                            rest.rfind(lit.as_str())?
                        } else {
                            rest.find(lit.as_str())?
                        };
                        values.push((name.to_string(), rest[..at].to_string()));
                        rest = &rest[at + lit.len()..];
                    }
                },
            }
        }
        match pending {
            Some(name) => values.push((name.to_string(), rest.to_string())),
            None if !rest.is_empty() => return None,
            None => {}
        }
        Some(values)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplatePair {
    pub system: Template,
    pub user: Template,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateSet {
    pub example_from_def: TemplatePair,
    pub def_from_example: TemplatePair,
}

impl Default for TemplateSet {
    fn default() -> Self {
        let t = |name, src| Template::parse(name, src).expect("built-in template parses");
        TemplateSet {
            example_from_def: TemplatePair {
                system: t("example_system", EXAMPLE_SYSTEM),
                user: t("example_user", EXAMPLE_USER),
            },
            def_from_example: TemplatePair {
                system: t("definition_system", DEFINITION_SYSTEM),
                user: t("definition_user", DEFINITION_USER),
            },
        }
    }
}

impl TemplateSet {
    /// Loads `example_system.txt`, `example_user.txt`, `definition_system.txt`
    /// and `definition_user.txt` from `dir`.
    pub fn from_dir(dir: impl AsRef<Path>) -> Result<Self, PromptError> {
        let dir = dir.as_ref();
        let read = |name: &str| -> Result<Template, PromptError> {
            let path = dir.join(format!("{name}.txt"));
            let src = std::fs::read_to_string(&path).map_err(|source| PromptError::Io {
                path: path.display().to_string(),
                source,
            })?;
            Template::parse(name, &src)
        };
        Ok(TemplateSet {
            example_from_def: TemplatePair {
                system: read("example_system")?,
                user: read("example_user")?,
            },
            def_from_example: TemplatePair {
                system: read("definition_system")?,
                user: read("definition_user")?,
            },
        })
    }

    pub fn pair(&self, direction: Direction) -> &TemplatePair {
        match direction {
            Direction::ExampleFromDef => &self.example_from_def,
            Direction::DefFromExample => &self.def_from_example,
        }
    }
}

/// Fields recovered from a rendered user prompt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedPrompt {
    pub direction: Direction,
    pub pos: String,
    pub word: String,
    /// The definition or example the prompt was built around.
    pub content: String,
}

#[derive(Debug, Clone)]
pub struct Prompter {
    pub language: String,
    pub templates: TemplateSet,
    pub allowed_shots: Vec<usize>,
}

fn require(name: &'static str, value: &str) -> Result<(), PromptError> {
    if value.trim().is_empty() {
        Err(PromptError::EmptyField(name))
    } else {
        Ok(())
    }
}

impl Prompter {
    pub fn new(language: &str) -> Self {
        Prompter {
            language: language.to_string(),
            templates: TemplateSet::default(),
            allowed_shots: vec![0, 5],
        }
    }

    pub fn with_templates(mut self, templates: TemplateSet) -> Self {
        self.templates = templates;
        self
    }

    pub fn render(
        &self,
        direction: Direction,
        word: &str,
        pos: &str,
        content: &str,
    ) -> Result<PromptPair, PromptError> {
        require("language", &self.language)?;
        require("word", word)?;
        require("part-of-speech", pos)?;
        let slot = match direction {
            Direction::ExampleFromDef => "definition",
            Direction::DefFromExample => "example",
        };
        require(slot, content)?;
        let values = [
            ("language", self.language.as_str()),
            ("part-of-speech", pos),
            ("word", word),
            (slot, content),
        ];
        let pair = self.templates.pair(direction);
        Ok(PromptPair {
            system: pair.system.render(&values)?,
            user: pair.user.render(&values)?,
        })
    }

    pub fn render_example_prompt(
        &self,
        word: &str,
        pos: &str,
        definition: &str,
    ) -> Result<PromptPair, PromptError> {
        self.render(Direction::ExampleFromDef, word, pos, definition)
    }

    pub fn render_definition_prompt(
        &self,
        word: &str,
        pos: &str,
        example: &str,
    ) -> Result<PromptPair, PromptError> {
        self.render(Direction::DefFromExample, word, pos, example)
    }

    /// Builds `[system, (user, assistant) per exemplar, user]`. Each exemplar's
    /// user turn is rendered with the same direction as the task; its assistant
    /// turn holds the expected output.
    pub fn assemble_messages(
        &self,
        task: &PromptPair,
        exemplars: &[FewShotExemplar],
        direction: Direction,
    ) -> Result<MessageSequence, PromptError> {
        if !self.allowed_shots.contains(&exemplars.len()) {
            return Err(PromptError::ShotCount(exemplars.len(), self.allowed_shots.clone()));
        }
        let mut messages = Vec::with_capacity(2 + 2 * exemplars.len());
        messages.push(Message {
            role: Role::System,
            content: task.system.clone(),
        });
        for (i, ex) in exemplars.iter().enumerate() {
            ex.validate(i)?;
            let (input, answer) = match direction {
                Direction::ExampleFromDef => (&ex.definition, &ex.example),
                Direction::DefFromExample => (&ex.example, &ex.definition),
            };
            let shot = self.render(direction, &ex.word, &ex.pos, input)?;
            messages.push(Message {
                role: Role::User,
                content: shot.user,
            });
            messages.push(Message {
                role: Role::Assistant,
                content: answer.clone(),
            });
        }
        messages.push(Message {
            role: Role::User,
            content: task.user.clone(),
        });
        MessageSequence::new(messages)
    }

    /// Inverse of the user template, used by scripted mock models.
    pub fn parse_user_prompt(&self, text: &str) -> Option<ParsedPrompt> {
        for direction in [Direction::ExampleFromDef, Direction::DefFromExample] {
            let Some(values) = self.templates.pair(direction).user.extract(text) else {
                continue;
            };
            let get = |k: &str| {
                values
                    .iter()
                    .find(|(name, _)| name == k)
                    .map(|(_, v)| v.clone())
            };
            let content = match direction {
                Direction::ExampleFromDef => get("definition"),
                Direction::DefFromExample => get("example"),
            };
            if let (Some(pos), Some(word), Some(content)) =
                (get("part-of-speech"), get("word"), content)
            {
                return Some(ParsedPrompt {
                    direction,
                    pos,
                    word,
                    content,
                });
            }
        }
        None
    }
}

pub fn render_example_prompt(
    language: &str,
    word: &str,
    pos: &str,
    definition: &str,
) -> Result<PromptPair, PromptError> {
    Prompter::new(language).render_example_prompt(word, pos, definition)
}

pub fn render_definition_prompt(
    language: &str,
    word: &str,
    pos: &str,
    example: &str,
) -> Result<PromptPair, PromptError> {
    Prompter::new(language).render_definition_prompt(word, pos, example)
}
