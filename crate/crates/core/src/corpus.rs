//! Message ingestion, tokenization and frequency-dictionary filtering.
//!
//! Tokens are lowercase lexemes. Hashtags and mentions keep their leading
//! `#` / `@`; URLs are dropped; any other punctuation separates tokens.

use std::collections::{BTreeSet, HashMap};

use serde::Deserialize;

use crate::error::{Error, Result};

static DEFAULT_STOP_WORDS: &str = include_str!("stopwords_en.txt");

/// A single microblog post.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Message {
    pub id: String,
    pub raw_text: String,
    pub tokens: Vec<String>,
}

impl Message {
    pub fn new(id: impl Into<String>, raw_text: impl Into<String>, config: &CorpusConfig) -> Self {
        let raw_text = raw_text.into();
        let tokens = tokenize(&raw_text, config);
        Message {
            id: id.into(),
            raw_text,
            tokens,
        }
    }

    pub fn contains(&self, lexeme: &str) -> bool {
        self.tokens.iter().any(|t| t == lexeme)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusConfig {
    /// Every analysed message must contain this lexeme. Empty disables the check.
    pub seed_keyword: String,
    pub min_count: u64,
    /// `u64::MAX` means unbounded.
    pub max_count: u64,
    pub min_tokens_per_message: usize,
    pub stop_words: BTreeSet<String>,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            seed_keyword: String::new(),
            min_count: 10,
            max_count: 4000,
            min_tokens_per_message: 5,
            stop_words: default_stop_words(),
        }
    }
}

impl CorpusConfig {
    /// No filtering at all: every lexeme and every message is kept.
    pub fn permissive() -> Self {
        CorpusConfig {
            seed_keyword: String::new(),
            min_count: 1,
            max_count: u64::MAX,
            min_tokens_per_message: 0,
            stop_words: BTreeSet::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.min_count < 1 {
            return Err(Error::Config("min_count must be at least 1".into()));
        }
        if self.min_count > self.max_count {
            return Err(Error::Config(format!(
                "min_count ({}) exceeds max_count ({})",
                self.min_count, self.max_count
            )));
        }
        Ok(())
    }
}

/// Parses a stop-word list: one lexeme per line, `#` lines are comments.
pub fn parse_stop_words(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
        .collect()
}

pub fn default_stop_words() -> BTreeSet<String> {
    parse_stop_words(DEFAULT_STOP_WORDS)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputFormat {
    #[default]
    Jsonl,
    Lines,
}

impl std::str::FromStr for InputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jsonl" => Ok(InputFormat::Jsonl),
            "lines" => Ok(InputFormat::Lines),
            other => Err(Error::Config(format!("unknown input format {other:?}"))),
        }
    }
}

#[derive(Deserialize)]
struct JsonMessage {
    id: String,
    text: String,
}

/// Decodes a corpus, producing one message per nonempty line in input order.
pub fn parse_messages(input: &[u8], format: InputFormat, config: &CorpusConfig) -> Result<Vec<Message>> {
    let text = std::str::from_utf8(input)?;
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        match format {
            InputFormat::Lines => out.push(Message::new(line_no.to_string(), line, config)),
            InputFormat::Jsonl => {
                let m: JsonMessage = serde_json::from_str(line).map_err(|e| Error::Parse {
                    line: line_no,
                    message: e.to_string(),
                })?;
                out.push(Message::new(m.id, m.text, config));
            }
        }
    }
    Ok(out)
}

#[inline]
fn is_word_char(c: char) -> bool {
    (c.is_alphanumeric() || c == '_') && !c.is_uppercase()
}

fn strip_url(chunk: &str) -> &str {
    let cut = [chunk.find("http://"), chunk.find("https://")]
        .into_iter()
        .flatten()
        .min();
    match cut {
        Some(p) => &chunk[..p],
        None => chunk,
    }
}

/// Splits raw text into normalized lexemes.
pub fn tokenize(raw_text: &str, config: &CorpusConfig) -> Vec<String> {
    let lower = raw_text.to_lowercase();
    let mut tokens = Vec::new();
    let mut push = |tok: &mut String| {
        if !tok.is_empty() {
            let body = tok.trim_start_matches(['#', '@']);
            if body.chars().count() >= 2 && !config.stop_words.contains(tok.as_str()) {
                tokens.push(std::mem::take(tok));
            } else {
                tok.clear();
            }
        }
    };

    for chunk in lower.split_whitespace() {
        let chunk = strip_url(chunk);
        let mut cur = String::new();
        let mut prev_word = false;
        let mut chars = chunk.chars().peekable();
        while let Some(c) = chars.next() {
            if is_word_char(c) {
                cur.push(c);
                prev_word = true;
                continue;
            }
            push(&mut cur);
            if (c == '#' || c == '@') && !prev_word && chars.peek().is_some_and(|&n| is_word_char(n)) {
                cur.push(c);
            }
            prev_word = false;
        }
        push(&mut cur);
    }
    tokens
}

/// Lexeme occurrence counts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrequencyDictionary {
    counts: HashMap<String, u64>,
}

impl FrequencyDictionary {
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn get(&self, lexeme: &str) -> Option<u64> {
        self.counts.get(lexeme).copied()
    }

    pub fn contains(&self, lexeme: &str) -> bool {
        self.counts.contains_key(lexeme)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Entries by descending count, ties by lexeme ascending.
    pub fn sorted(&self) -> Vec<(&str, u64)> {
        let mut v: Vec<_> = self.counts.iter().map(|(k, &c)| (k.as_str(), c)).collect();
        v.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        v
    }

    /// `lexeme<TAB>count` lines in report order.
    pub fn to_tsv(&self) -> String {
        let mut s = String::new();
        for (lex, count) in self.sorted() {
            s.push_str(lex);
            s.push('\t');
            s.push_str(&count.to_string());
            s.push('\n');
        }
        s
    }

    /// `"lexeme (count), ..."` for the `limit` most frequent lexemes.
    pub fn summary(&self, limit: usize) -> String {
        self.sorted()
            .into_iter()
            .take(limit)
            .map(|(l, c)| format!("{l} ({c})"))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl FromIterator<(String, u64)> for FrequencyDictionary {
    fn from_iter<I: IntoIterator<Item = (String, u64)>>(iter: I) -> Self {
        FrequencyDictionary {
            counts: iter.into_iter().filter(|(_, c)| *c >= 1).collect(),
        }
    }
}

/// Counts every token occurrence, repeats within a message included.
pub fn build_dictionary(messages: &[Message]) -> FrequencyDictionary {
    let mut counts: HashMap<String, u64> = HashMap::new();
    for tok in messages.iter().flat_map(|m| &m.tokens) {
        *counts.entry(tok.clone()).or_default() += 1;
    }
    FrequencyDictionary { counts }
}

pub fn filter_dictionary(dict: &FrequencyDictionary, config: &CorpusConfig) -> FrequencyDictionary {
    FrequencyDictionary {
        counts: dict
            .counts
            .iter()
            .filter(|(lex, &c)| {
                c >= config.min_count && c <= config.max_count && !config.stop_words.contains(lex.as_str())
            })
            .map(|(k, &c)| (k.clone(), c))
            .collect(),
    }
}

/// Restricts each message to retained lexemes and drops messages that end up
/// too short or that lack the seed keyword.
pub fn filter_messages(
    messages: &[Message],
    retained: &FrequencyDictionary,
    config: &CorpusConfig,
) -> Vec<Message> {
    messages
        .iter()
        .filter(|m| config.seed_keyword.is_empty() || m.contains(&config.seed_keyword))
        .filter_map(|m| {
            let tokens: Vec<String> = m.tokens.iter().filter(|t| retained.contains(t)).cloned().collect();
            (tokens.len() >= config.min_tokens_per_message).then(|| Message {
                id: m.id.clone(),
                raw_text: m.raw_text.clone(),
                tokens,
            })
        })
        .collect()
}
