//! Batch commands: corpus → dictionary → context → lattice / itemsets / rules.
//!
//! Every command computes all of its outputs before touching the output
//! directory, then writes each file through a temporary file and a rename,
//! so a failing run leaves no partial files behind.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::config::PipelineConfig;
use crate::context::{build_context, FormalContext, SemanticField};
use crate::corpus::{build_dictionary, filter_dictionary, filter_messages, parse_messages, FrequencyDictionary, Message};
use crate::dot::to_dot;
use crate::error::{Error, Result};
use crate::lattice::{enumerate_concepts_with_limit, format_set, ConceptLattice};
use crate::rules::{format_percent_fixed, generate_rules, itemsets_to_text, mine_frequent_itemsets, rules_to_tsv};

pub const DICTIONARY_FILE: &str = "dictionary.tsv";
pub const ITEMSETS_FILE: &str = "itemsets.txt";
pub const CONTEXT_FILE: &str = "context.json";
pub const LATTICE_FILE: &str = "lattice.json";
pub const DOT_FILE: &str = "lattice.dot";
pub const RULES_FILE: &str = "rules.tsv";
pub const IDEAL_FILTER_FILE: &str = "ideal_filter.txt";

/// What a command wrote and the line it reports on stdout.
#[derive(Debug)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    pub summary: String,
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::io(path, e))
}

fn write_all(dir: &Path, files: &[(&str, String)]) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut staged = Vec::with_capacity(files.len());
    for (name, body) in files {
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
        tmp.write_all(body.as_bytes()).map_err(|e| Error::io(tmp.path(), e))?;
        staged.push((tmp, dir.join(name)));
    }
    let mut written = Vec::with_capacity(staged.len());
    for (tmp, dest) in staged {
        tmp.persist(&dest).map_err(|e| Error::io(&dest, e.error))?;
        written.push(dest);
    }
    Ok(written)
}

/// Seed-filtered messages, the filtered dictionary and the analysis-ready
/// messages.
pub struct Prepared {
    pub dictionary: FrequencyDictionary,
    pub messages: Vec<Message>,
}

pub fn prepare(cfg: &PipelineConfig) -> Result<Prepared> {
    let path = cfg
        .input
        .as_ref()
        .ok_or_else(|| Error::Config("no corpus given (--input)".into()))?;
    let bytes = read(path)?;
    let messages = parse_messages(&bytes, cfg.format, &cfg.corpus).map_err(|e| match e {
        Error::Parse { line, message } => Error::Config(format!("{}: line {line}: {message}", path.display())),
        Error::Decode(d) => Error::Config(format!("{}: {d}", path.display())),
        other => other,
    })?;
    let seeded: Vec<Message> = if cfg.corpus.seed_keyword.is_empty() {
        messages
    } else {
        messages.into_iter().filter(|m| m.contains(&cfg.corpus.seed_keyword)).collect()
    };
    let dictionary = filter_dictionary(&build_dictionary(&seeded), &cfg.corpus);
    let messages = filter_messages(&seeded, &dictionary, &cfg.corpus);
    Ok(Prepared { dictionary, messages })
}

fn load_field(path: &Path) -> Result<SemanticField> {
    let text = String::from_utf8(read(path)?).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("field");
    SemanticField::parse(&text, stem).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

/// The analysed context: a serialized one when `--context` is given,
/// otherwise the prepared corpus against the semantic field.
pub fn load_context(cfg: &PipelineConfig) -> Result<FormalContext> {
    if let Some(path) = &cfg.context {
        let text = String::from_utf8(read(path)?).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        return FormalContext::from_json(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())));
    }
    let field_path = cfg
        .field
        .as_ref()
        .ok_or_else(|| Error::Config("no semantic field given (--field or --context)".into()))?;
    let field = load_field(field_path)?;
    let prepared = prepare(cfg)?;
    build_context(&prepared.messages, &field)
}

pub fn cmd_dict(cfg: &PipelineConfig) -> Result<Outcome> {
    let prepared = prepare(cfg)?;
    let files = write_all(&cfg.out_dir, &[(DICTIONARY_FILE, prepared.dictionary.to_tsv())])?;
    Ok(Outcome {
        files,
        summary: format!("lexemes: {}", prepared.dictionary.len()),
    })
}

/// Mines over the semantic field when one is given, otherwise over every
/// retained dictionary lexeme.
pub fn cmd_itemsets(cfg: &PipelineConfig) -> Result<Outcome> {
    let ctx = if cfg.context.is_some() || cfg.field.is_some() {
        Some(load_context(cfg)?)
    } else {
        let prepared = prepare(cfg)?;
        let mut lexemes: Vec<String> = prepared.dictionary.sorted().into_iter().map(|(l, _)| l.to_string()).collect();
        lexemes.sort();
        if lexemes.is_empty() {
            None
        } else {
            let field = SemanticField::new("dictionary", lexemes)?;
            match build_context(&prepared.messages, &field) {
                Ok(ctx) => Some(ctx),
                Err(Error::EmptyContext) => None,
                Err(e) => return Err(e),
            }
        }
    };
    let (body, count) = match &ctx {
        Some(ctx) => {
            let sets = mine_frequent_itemsets(ctx, &cfg.mining);
            (itemsets_to_text(ctx, &sets), sets.len())
        }
        None => (String::new(), 0),
    };
    let files = write_all(&cfg.out_dir, &[(ITEMSETS_FILE, body)])?;
    Ok(Outcome {
        files,
        summary: format!("itemsets: {count}"),
    })
}

fn lattice_for(cfg: &PipelineConfig) -> Result<(FormalContext, ConceptLattice)> {
    let ctx = load_context(cfg)?;
    let lattice = enumerate_concepts_with_limit(&ctx, cfg.max_concepts)?;
    Ok((ctx, lattice))
}

pub fn cmd_lattice(cfg: &PipelineConfig) -> Result<Outcome> {
    let (ctx, lattice) = lattice_for(cfg)?;
    let mut outputs = vec![(CONTEXT_FILE, ctx.to_json()), (LATTICE_FILE, lattice.to_json(&ctx))];
    if cfg.write_dot {
        outputs.push((DOT_FILE, to_dot(&ctx, &lattice, &cfg.dot)));
    }
    let files = write_all(&cfg.out_dir, &outputs)?;
    Ok(Outcome {
        files,
        summary: format!(
            "objects: {}, attributes: {}, concepts: {}, edges: {}",
            ctx.object_count(),
            ctx.attribute_count(),
            lattice.len(),
            lattice.edges().len()
        ),
    })
}

pub fn cmd_rules(cfg: &PipelineConfig) -> Result<Outcome> {
    let ctx = load_context(cfg)?;
    let sets = mine_frequent_itemsets(&ctx, &cfg.mining);
    let rules = generate_rules(&ctx, &sets, &cfg.mining);
    let implications = rules.iter().filter(|r| r.is_implication()).count();
    let files = write_all(&cfg.out_dir, &[(RULES_FILE, rules_to_tsv(&ctx, &rules))])?;
    Ok(Outcome {
        files,
        summary: format!("rules: {}, implications: {implications}", rules.len()),
    })
}

/// Renders the ideal, filter and ideal∪filter field of the concept generated
/// by `query` (closed first).
pub fn ideal_filter_report<S: AsRef<str>>(ctx: &FormalContext, lattice: &ConceptLattice, query: &[S]) -> Result<String> {
    let intent = ctx.closure(&ctx.attribute_set(query)?);
    let idx = lattice
        .index_of_intent(&intent)
        .expect("a closed attribute set is always a concept intent");
    let concept = lattice.concept(idx);
    let n = ctx.object_count();
    let line = |i: usize| {
        let c = lattice.concept(i);
        format!(
            "  c{i}\t{}\t{}\t{}\n",
            format_set(&ctx.attribute_names(&c.intent)),
            format_set(&ctx.object_names(&c.extent)),
            format_percent_fixed(c.extent.count(), n)
        )
    };

    let mut s = format!(
        "concept\tc{idx}\t{}\t{}\t{}\n",
        format_set(&ctx.attribute_names(&concept.intent)),
        format_set(&ctx.object_names(&concept.extent)),
        format_percent_fixed(concept.extent.count(), n)
    );
    let ideal = lattice.order_ideal(concept)?;
    s.push_str(&format!("ideal\t{}\n", ideal.len()));
    ideal.iter().for_each(|&i| s.push_str(&line(i)));
    let filter = lattice.order_filter(concept)?;
    s.push_str(&format!("filter\t{}\n", filter.len()));
    filter.iter().for_each(|&i| s.push_str(&line(i)));
    let field = lattice.ideal_filter_field(ctx, concept)?;
    s.push_str(&format!("field\t{}\n", format_set(field.keywords())));
    Ok(s)
}

pub fn cmd_ideal_filter<S: AsRef<str>>(cfg: &PipelineConfig, query: &[S]) -> Result<Outcome> {
    let (ctx, lattice) = lattice_for(cfg)?;
    let report = ideal_filter_report(&ctx, &lattice, query)?;
    let files = write_all(&cfg.out_dir, &[(IDEAL_FILTER_FILE, report.clone())])?;
    Ok(Outcome {
        files,
        summary: report.trim_end().to_string(),
    })
}
