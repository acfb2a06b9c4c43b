//! Formal contexts over a semantic field and their derivation operators.
//!
//! Objects are messages, attributes are field keywords, and the incidence
//! relation says which keywords occur in which message. The two derivation
//! operators form a Galois connection between object sets and attribute
//! sets; `close_attributes` is the induced closure operator.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::corpus::{tokenize, CorpusConfig, Message};
use crate::error::{Error, Result};

/// A named keyword set delimiting the attribute universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemanticField {
    name: String,
    keywords: Vec<String>,
}

fn normalize_keyword(raw: &str) -> Option<String> {
    let mut toks = tokenize(raw, &CorpusConfig::permissive());
    if toks.len() != 1 {
        return None;
    }
    let tok = toks.pop()?;
    if raw.trim_start().starts_with('#') != tok.starts_with('#') {
        return None;
    }
    Some(tok)
}

impl SemanticField {
    /// Keywords must already be normalized lexemes; order is kept as given.
    pub fn new<S: Into<String>>(name: impl Into<String>, keywords: impl IntoIterator<Item = S>) -> Result<Self> {
        let keywords: Vec<String> = keywords.into_iter().map(Into::into).collect();
        if keywords.is_empty() {
            return Err(Error::InvalidField("no keywords".into()));
        }
        let mut seen = HashSet::new();
        for kw in &keywords {
            if normalize_keyword(kw).as_deref() != Some(kw.as_str()) {
                return Err(Error::InvalidField(format!("{kw:?} is not a normalized lexeme")));
            }
            if !seen.insert(kw.as_str()) {
                return Err(Error::InvalidField(format!("duplicate keyword {kw:?}")));
            }
        }
        Ok(SemanticField {
            name: name.into(),
            keywords,
        })
    }

    /// Reads the field file format: an optional `name: <label>` first line,
    /// then one keyword per line. Keywords are normalized (lowercased); a
    /// line starting with `#` must be exactly one hashtag. A line in itemset
    /// form, `{a, b}` optionally followed by a tab and a count, contributes
    /// all of its items, so a mined set can be pasted in as a field.
    pub fn parse(text: &str, default_name: &str) -> Result<Self> {
        let mut name = default_name.to_string();
        let mut keywords = Vec::new();
        let mut first = true;
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if first {
                first = false;
                if let Some(label) = line.strip_prefix("name:") {
                    name = label.trim().to_string();
                    continue;
                }
            }
            let bad = |item: &str| Error::Parse {
                line: idx + 1,
                message: format!("{item:?} is not a single keyword"),
            };
            if let Some(rest) = line.strip_prefix('{') {
                let (items, _) = rest.split_once('}').ok_or_else(|| bad(line))?;
                for item in items.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    keywords.push(normalize_keyword(item).ok_or_else(|| bad(item))?);
                }
                continue;
            }
            keywords.push(normalize_keyword(line).ok_or_else(|| bad(line))?);
        }
        SemanticField::new(name, keywords)
    }

    /// Skips lexeme validation; for keyword sets taken from an existing
    /// context, whose attribute names need not be tokenizer output.
    pub(crate) fn from_attributes(name: String, keywords: Vec<String>) -> Self {
        debug_assert!(!keywords.is_empty());
        SemanticField { name, keywords }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn keywords(&self) -> &[String] {
        &self.keywords
    }

    pub fn len(&self) -> usize {
        self.keywords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keywords.is_empty()
    }

    pub fn contains(&self, kw: &str) -> bool {
        self.keywords.iter().any(|k| k == kw)
    }

    /// File rendering accepted by [`SemanticField::parse`].
    pub fn to_text(&self) -> String {
        let mut s = format!("name: {}\n", self.name);
        for kw in &self.keywords {
            s.push_str(kw);
            s.push('\n');
        }
        s
    }
}

/// Objects × attributes boolean incidence, stored both row- and column-wise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    rows: Vec<BitSet>,
    columns: Vec<BitSet>,
    object_index: HashMap<String, usize>,
    attribute_index: HashMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
struct ContextDoc {
    objects: Vec<String>,
    attributes: Vec<String>,
    rows: Vec<String>,
}

impl FormalContext {
    /// Builds a context from rows of attribute indices. Attributes are
    /// re-sorted lexicographically; rows are remapped accordingly.
    pub fn from_rows(objects: Vec<String>, attributes: Vec<String>, rows: Vec<BitSet>) -> Result<Self> {
        if rows.len() != objects.len() {
            return Err(Error::InvalidContext(format!(
                "{} rows for {} objects",
                rows.len(),
                objects.len()
            )));
        }
        let m = attributes.len();
        if let Some(r) = rows.iter().find(|r| r.universe() != m) {
            return Err(Error::InvalidContext(format!(
                "row width {} does not match {m} attributes",
                r.universe()
            )));
        }

        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| attributes[a].cmp(&attributes[b]));
        let sorted_attrs: Vec<String> = order.iter().map(|&i| attributes[i].clone()).collect();
        let rows: Vec<BitSet> = if order.iter().enumerate().all(|(i, &j)| i == j) {
            rows
        } else {
            rows.iter()
                .map(|r| BitSet::from_indices(m, (0..m).filter(|&new| r.contains(order[new]))))
                .collect()
        };

        let mut attribute_index = HashMap::with_capacity(m);
        for (i, a) in sorted_attrs.iter().enumerate() {
            if attribute_index.insert(a.clone(), i).is_some() {
                return Err(Error::InvalidContext(format!("duplicate attribute {a:?}")));
            }
        }
        let mut object_index = HashMap::with_capacity(objects.len());
        for (i, o) in objects.iter().enumerate() {
            if object_index.insert(o.clone(), i).is_some() {
                return Err(Error::InvalidContext(format!("duplicate object id {o:?}")));
            }
        }
        if let Some(i) = rows.iter().position(BitSet::is_empty) {
            return Err(Error::InvalidContext(format!(
                "object {:?} has no attribute",
                objects[i]
            )));
        }

        let mut columns = vec![BitSet::new(objects.len()); m];
        for (g, row) in rows.iter().enumerate() {
            for a in row {
                columns[a].insert(g);
            }
        }
        Ok(FormalContext {
            objects,
            attributes: sorted_attrs,
            rows,
            columns,
            object_index,
            attribute_index,
        })
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn attribute_count(&self) -> usize {
        self.attributes.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    /// Attributes in lexicographic order; positions are attribute indices.
    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn row(&self, object: usize) -> &BitSet {
        &self.rows[object]
    }

    pub fn column(&self, attribute: usize) -> &BitSet {
        &self.columns[attribute]
    }

    pub fn incidence(&self, object: usize, attribute: usize) -> bool {
        self.rows[object].contains(attribute)
    }

    pub fn object_index(&self, id: &str) -> Result<usize> {
        self.object_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownObject(id.to_string()))
    }

    pub fn attribute_index(&self, name: &str) -> Result<usize> {
        self.attribute_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownAttribute(name.to_string()))
    }

    pub fn object_set<S: AsRef<str>>(&self, ids: &[S]) -> Result<BitSet> {
        let mut set = BitSet::new(self.object_count());
        for id in ids {
            set.insert(self.object_index(id.as_ref())?);
        }
        Ok(set)
    }

    pub fn attribute_set<S: AsRef<str>>(&self, names: &[S]) -> Result<BitSet> {
        let mut set = BitSet::new(self.attribute_count());
        for n in names {
            set.insert(self.attribute_index(n.as_ref())?);
        }
        Ok(set)
    }

    pub fn object_names(&self, set: &BitSet) -> Vec<String> {
        set.iter().map(|i| self.objects[i].clone()).collect()
    }

    pub fn attribute_names(&self, set: &BitSet) -> Vec<String> {
        set.iter().map(|i| self.attributes[i].clone()).collect()
    }

    /// Attributes shared by every object in `extent`; all attributes for an
    /// empty extent.
    pub fn intent_of(&self, extent: &BitSet) -> BitSet {
        let mut out = BitSet::full(self.attribute_count());
        for g in extent {
            out.intersect_with(&self.rows[g]);
        }
        out
    }

    /// Objects having every attribute in `intent`; all objects for an empty
    /// intent.
    pub fn extent_of(&self, intent: &BitSet) -> BitSet {
        let mut out = BitSet::full(self.object_count());
        for a in intent {
            out.intersect_with(&self.columns[a]);
        }
        out
    }

    /// `|intent′|` without materializing the extent beyond one scratch set.
    pub fn support_count(&self, intent: &BitSet) -> usize {
        let mut it = intent.iter();
        match (it.next(), it.next()) {
            (None, _) => self.object_count(),
            (Some(a), None) => self.columns[a].count(),
            (Some(a), Some(b)) => {
                let mut acc = self.columns[a].intersection(&self.columns[b]);
                for c in it {
                    acc.intersect_with(&self.columns[c]);
                }
                acc.count()
            }
        }
    }

    pub fn closure(&self, intent: &BitSet) -> BitSet {
        self.intent_of(&self.extent_of(intent))
    }

    pub fn derive_intent<S: AsRef<str>>(&self, extent: &[S]) -> Result<BTreeSet<String>> {
        let set = self.object_set(extent)?;
        Ok(self.attribute_names(&self.intent_of(&set)).into_iter().collect())
    }

    pub fn derive_extent<S: AsRef<str>>(&self, intent: &[S]) -> Result<BTreeSet<String>> {
        let set = self.attribute_set(intent)?;
        Ok(self.object_names(&self.extent_of(&set)).into_iter().collect())
    }

    pub fn close_attributes<S: AsRef<str>>(&self, attrs: &[S]) -> Result<BTreeSet<String>> {
        let set = self.attribute_set(attrs)?;
        Ok(self.attribute_names(&self.closure(&set)).into_iter().collect())
    }

    pub fn to_json(&self) -> String {
        let doc = ContextDoc {
            objects: self.objects.clone(),
            attributes: self.attributes.clone(),
            rows: self.rows.iter().map(BitSet::to_bit_string).collect(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("context serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ContextDoc = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        let m = doc.attributes.len();
        let rows = doc
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                if r.chars().count() != m {
                    return Err(Error::InvalidContext(format!(
                        "row {i} has {} cells, expected {m}",
                        r.chars().count()
                    )));
                }
                let mut set = BitSet::new(m);
                for (j, c) in r.chars().enumerate() {
                    match c {
                        '1' => {
                            set.insert(j);
                        }
                        '0' => {}
                        other => {
                            return Err(Error::InvalidContext(format!("row {i} has invalid cell {other:?}")))
                        }
                    }
                }
                Ok(set)
            })
            .collect::<Result<Vec<_>>>()?;
        FormalContext::from_rows(doc.objects, doc.attributes, rows)
    }
}

/// Objects are the messages containing at least one field keyword, in input
/// order; attributes are the field keywords in lexicographic order.
pub fn build_context(messages: &[Message], field: &SemanticField) -> Result<FormalContext> {
    if field.is_empty() {
        return Err(Error::InvalidField("no keywords".into()));
    }
    let mut attributes = field.keywords().to_vec();
    attributes.sort();
    let index: HashMap<&str, usize> = attributes.iter().enumerate().map(|(i, a)| (a.as_str(), i)).collect();

    let mut objects = Vec::new();
    let mut rows = Vec::new();
    for m in messages {
        let mut row = BitSet::new(attributes.len());
        for t in &m.tokens {
            if let Some(&j) = index.get(t.as_str()) {
                row.insert(j);
            }
        }
        if !row.is_empty() {
            objects.push(m.id.clone());
            rows.push(row);
        }
    }
    if objects.is_empty() {
        return Err(Error::EmptyContext);
    }
    FormalContext::from_rows(objects, attributes, rows)
}
