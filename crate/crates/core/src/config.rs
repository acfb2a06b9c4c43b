//! Pipeline settings: a flat TOML document whose keys mirror the CLI flags.
//! Flags override the file; unset keys fall back to defaults.

use std::path::{Path, PathBuf};

use clap::Args;
use serde::Deserialize;

use crate::corpus::{default_stop_words, parse_stop_words, CorpusConfig, InputFormat};
use crate::dot::{DotOptions, Labeling};
use crate::error::{Error, Result};
use crate::lattice::DEFAULT_MAX_CONCEPTS;
use crate::rules::MiningParams;

/// Upper count bound; `inf` means unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountBound(pub u64);

impl std::str::FromStr for CountBound {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "inf" | "unbounded" => Ok(CountBound(u64::MAX)),
            n => n.parse().map(CountBound).map_err(|e| format!("{n:?}: {e}")),
        }
    }
}

impl<'de> Deserialize<'de> for CountBound {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(n) => Ok(CountBound(n)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Settings {
    /// Corpus file (JSONL objects with "id" and "text", or one message per line)
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Corpus format: jsonl or lines
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Stop-word file, one lexeme per line (default: built-in English list)
    #[arg(long, global = true)]
    pub stopwords: Option<PathBuf>,
    /// Semantic field file
    #[arg(long, global = true)]
    pub field: Option<PathBuf>,
    /// Serialized formal context; replaces --input/--field when given
    #[arg(long, global = true)]
    pub context: Option<PathBuf>,
    /// Output directory (default: current directory)
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,
    /// Minimum lexeme count kept in the dictionary
    #[arg(long, global = true)]
    pub min_count: Option<u64>,
    /// Maximum lexeme count, or "inf"
    #[arg(long, global = true)]
    pub max_count: Option<CountBound>,
    /// Minimum dictionary lexemes a message needs to be kept
    #[arg(long, global = true)]
    pub min_tokens: Option<usize>,
    /// Keep only messages containing this lexeme (empty disables)
    #[arg(long, global = true)]
    pub seed_keyword: Option<String>,
    /// Absolute itemset support threshold
    #[arg(long, global = true)]
    pub theta: Option<usize>,
    /// Itemsets need support strictly greater than theta
    #[arg(long, global = true)]
    #[serde(default)]
    pub strict_theta: bool,
    /// Smallest itemset size
    #[arg(long, global = true)]
    pub min_size: Option<usize>,
    /// Largest itemset size
    #[arg(long, global = true)]
    pub max_size: Option<usize>,
    /// Rules need support above this fraction
    #[arg(long, global = true)]
    pub min_supp: Option<f64>,
    /// Rules need confidence above this fraction
    #[arg(long, global = true)]
    pub min_conf: Option<f64>,
    /// Also write the Hasse diagram as lattice.dot
    #[arg(long, global = true)]
    #[serde(default)]
    pub dot: bool,
    /// DOT node labels: full or reduced
    #[arg(long, global = true)]
    pub labeling: Option<String>,
    /// Leave out the bottom node when its extent is empty
    #[arg(long, global = true)]
    #[serde(default)]
    pub hide_empty_bottom: bool,
    /// Append the extent percentage to each node label
    #[arg(long, global = true)]
    #[serde(default)]
    pub show_extent_pct: bool,
    /// Abort when the lattice would exceed this many concepts
    #[arg(long, global = true)]
    pub max_concepts: Option<usize>,
}

impl Settings {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Settings::from_toml(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// `self` wins wherever it is set.
    pub fn over(self, base: Settings) -> Settings {
        Settings {
            input: self.input.or(base.input),
            format: self.format.or(base.format),
            stopwords: self.stopwords.or(base.stopwords),
            field: self.field.or(base.field),
            context: self.context.or(base.context),
            out_dir: self.out_dir.or(base.out_dir),
            min_count: self.min_count.or(base.min_count),
            max_count: self.max_count.or(base.max_count),
            min_tokens: self.min_tokens.or(base.min_tokens),
            seed_keyword: self.seed_keyword.or(base.seed_keyword),
            theta: self.theta.or(base.theta),
            strict_theta: self.strict_theta || base.strict_theta,
            min_size: self.min_size.or(base.min_size),
            max_size: self.max_size.or(base.max_size),
            min_supp: self.min_supp.or(base.min_supp),
            min_conf: self.min_conf.or(base.min_conf),
            dot: self.dot || base.dot,
            labeling: self.labeling.or(base.labeling),
            hide_empty_bottom: self.hide_empty_bottom || base.hide_empty_bottom,
            show_extent_pct: self.show_extent_pct || base.show_extent_pct,
            max_concepts: self.max_concepts.or(base.max_concepts),
        }
    }

    /// Resolves defaults, reads the stop-word file and checks that every
    /// referenced input exists.
    pub fn resolve(self) -> Result<PipelineConfig> {
        for p in [&self.input, &self.stopwords, &self.field, &self.context].into_iter().flatten() {
            if let Err(e) = std::fs::metadata(p) {
                return Err(Error::io(p, e));
            }
        }
        let stop_words = match &self.stopwords {
            Some(p) => parse_stop_words(&std::fs::read_to_string(p).map_err(|e| Error::io(p, e))?),
            None => default_stop_words(),
        };
        let defaults = CorpusConfig::default();
        let corpus = CorpusConfig {
            seed_keyword: self.seed_keyword.unwrap_or_default(),
            min_count: self.min_count.unwrap_or(defaults.min_count),
            max_count: self.max_count.map_or(defaults.max_count, |b| b.0),
            min_tokens_per_message: self.min_tokens.unwrap_or(defaults.min_tokens_per_message),
            stop_words,
        };
        corpus.validate()?;

        let d = MiningParams::default();
        let mining = MiningParams {
            theta: self.theta.unwrap_or(d.theta),
            strict_theta: self.strict_theta,
            min_size: self.min_size.unwrap_or(d.min_size),
            max_size: self.max_size.unwrap_or(d.max_size),
            min_supp: self.min_supp.unwrap_or(d.min_supp),
            min_conf: self.min_conf.unwrap_or(d.min_conf),
        };
        mining.validate()?;

        Ok(PipelineConfig {
            input: self.input,
            format: self.format.as_deref().map(str::parse).transpose()?.unwrap_or_default(),
            field: self.field,
            context: self.context,
            out_dir: self.out_dir.unwrap_or_else(|| PathBuf::from(".")),
            corpus,
            mining,
            write_dot: self.dot,
            dot: DotOptions {
                labeling: self.labeling.as_deref().map(str::parse::<Labeling>).transpose()?.unwrap_or_default(),
                hide_empty_bottom: self.hide_empty_bottom,
                show_extent_pct: self.show_extent_pct,
            },
            max_concepts: self.max_concepts.unwrap_or(DEFAULT_MAX_CONCEPTS),
        })
    }
}

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub input: Option<PathBuf>,
    pub format: InputFormat,
    pub field: Option<PathBuf>,
    pub context: Option<PathBuf>,
    pub out_dir: PathBuf,
    pub corpus: CorpusConfig,
    pub mining: MiningParams,
    pub write_dot: bool,
    pub dot: DotOptions,
    pub max_concepts: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_keys_match_flags() {
        let s = Settings::from_toml(
            "input = \"c.jsonl\"\nmin-count = 3\nmax-count = \"inf\"\ntheta = 4\nmin-conf = 0.5\ndot = true\nlabeling = \"reduced\"\n",
        )
        .unwrap();
        assert_eq!(s.min_count, Some(3));
        assert_eq!(s.max_count, Some(CountBound(u64::MAX)));
        assert!(s.dot);
        let c = s.resolve();
        // c.jsonl does not exist
        assert!(matches!(c, Err(Error::Io { .. })));
    }

    #[test]
    fn unknown_key_rejected() {
        assert!(Settings::from_toml("bogus = 1\n").is_err());
    }

    #[test]
    fn flags_win() {
        let file = Settings::from_toml("theta = 4\nmin-size = 1\nlabeling = \"reduced\"\n").unwrap();
        let flags = Settings {
            theta: Some(7),
            ..Default::default()
        };
        let cfg = flags.over(file).resolve().unwrap();
        assert_eq!(cfg.mining.theta, 7);
        assert_eq!(cfg.mining.min_size, 1);
        assert_eq!(cfg.dot.labeling, Labeling::Reduced);
    }

    #[test]
    fn defaults() {
        let cfg = Settings::default().resolve().unwrap();
        assert_eq!(cfg.corpus.min_count, 10);
        assert_eq!(cfg.corpus.max_count, 4000);
        assert_eq!(cfg.corpus.min_tokens_per_message, 5);
        assert_eq!(cfg.mining.theta, 10);
        assert_eq!((cfg.mining.min_size, cfg.mining.max_size), (2, 5));
        assert_eq!(cfg.max_concepts, 100_000);
        assert!(cfg.corpus.stop_words.contains("the"));
    }

    #[test]
    fn invalid_values() {
        let bad = Settings {
            min_count: Some(20),
            max_count: Some(CountBound(10)),
            ..Default::default()
        };
        assert!(bad.resolve().is_err());
        let bad = Settings {
            labeling: Some("fancy".into()),
            ..Default::default()
        };
        assert!(bad.resolve().is_err());
        let bad = Settings {
            format: Some("xml".into()),
            ..Default::default()
        };
        assert!(bad.resolve().is_err());
    }
}
