//! Concept lattice enumeration and order queries.
//!
//! Concepts are enumerated with Close-by-One over the lexicographic
//! attribute order. Covering edges come from upper-neighbour search: the
//! upper neighbours of `(A, B)` are the maximal intents among `B ∩ g′` for
//! objects `g ∉ A`.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::bitset::BitSet;
use crate::context::{FormalContext, SemanticField};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_CONCEPTS: usize = 100_000;

/// A formal concept: `extent′ = intent` and `intent′ = extent`.
#[derive(Debug, Clone, PartialEq)]
pub struct Concept {
    pub extent: BitSet,
    pub intent: BitSet,
    /// `|extent| / |objects|`.
    pub extent_pct: f64,
}

impl Concept {
    fn new(extent: BitSet, intent: BitSet) -> Self {
        let n = extent.universe();
        let extent_pct = if n == 0 { 0.0 } else { extent.count() as f64 / n as f64 };
        Concept {
            extent,
            intent,
            extent_pct,
        }
    }
}

/// `c1 ≤ c2` iff `extent(c1) ⊆ extent(c2)` (equivalently `intent(c1) ⊇ intent(c2)`).
pub fn order_leq(c1: &Concept, c2: &Concept) -> bool {
    c1.extent.is_subset(&c2.extent)
}

fn concept_order(a: &Concept, b: &Concept) -> Ordering {
    b.extent
        .count()
        .cmp(&a.extent.count())
        .then_with(|| a.intent.iter().cmp(b.intent.iter()))
}

#[derive(Debug, Clone)]
pub struct ConceptLattice {
    concepts: Vec<Concept>,
    top: usize,
    bottom: usize,
    edges: Vec<(usize, usize)>,
    by_intent: HashMap<BitSet, usize>,
}

impl ConceptLattice {
    fn from_concepts(ctx: &FormalContext, mut concepts: Vec<Concept>) -> Self {
        concepts.sort_by(concept_order);
        let by_intent: HashMap<BitSet, usize> = concepts
            .iter()
            .enumerate()
            .map(|(i, c)| (c.intent.clone(), i))
            .collect();
        let top = by_intent[&ctx.intent_of(&BitSet::full(ctx.object_count()))];
        let bottom = by_intent[&BitSet::full(ctx.attribute_count())];
        let edges = covering_edges(ctx, &concepts, &by_intent);
        ConceptLattice {
            concepts,
            top,
            bottom,
            edges,
            by_intent,
        }
    }

    /// Concepts sorted by extent size descending, then intent lexicographically.
    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    /// Covering pairs `(upper, lower)`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn concept(&self, index: usize) -> &Concept {
        &self.concepts[index]
    }

    pub fn index_of_intent(&self, intent: &BitSet) -> Option<usize> {
        self.by_intent.get(intent).copied()
    }

    pub fn index_of(&self, c: &Concept) -> Result<usize> {
        match self.by_intent.get(&c.intent) {
            Some(&i) if self.concepts[i].extent == c.extent => Ok(i),
            _ => Err(Error::ConceptNotFound),
        }
    }

    /// Indices of every concept below or equal to `c`, ascending.
    pub fn order_ideal(&self, c: &Concept) -> Result<Vec<usize>> {
        self.index_of(c)?;
        Ok((0..self.len()).filter(|&i| order_leq(&self.concepts[i], c)).collect())
    }

    /// Indices of every concept above or equal to `c`, ascending.
    pub fn order_filter(&self, c: &Concept) -> Result<Vec<usize>> {
        self.index_of(c)?;
        Ok((0..self.len()).filter(|&i| order_leq(c, &self.concepts[i])).collect())
    }

    /// Union of intents over the ideal and filter of `c`, as a field named
    /// after `c`'s intent.
    pub fn ideal_filter_field(&self, ctx: &FormalContext, c: &Concept) -> Result<SemanticField> {
        let mut union = BitSet::new(ctx.attribute_count());
        for i in self.order_ideal(c)?.into_iter().chain(self.order_filter(c)?) {
            union.union_with(&self.concepts[i].intent);
        }
        Ok(SemanticField::from_attributes(
            format_set(&ctx.attribute_names(&c.intent)),
            ctx.attribute_names(&union),
        ))
    }

    /// Index of the concept each attribute first appears in (its attribute
    /// concept `(a′, a″)`), indexed by attribute.
    pub fn attribute_concepts(&self, ctx: &FormalContext) -> Vec<usize> {
        (0..ctx.attribute_count())
            .map(|a| {
                let intent = ctx.intent_of(ctx.column(a));
                self.by_intent[&intent]
            })
            .collect()
    }

    /// Longest path length from the top along covering edges.
    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0usize; self.len()];
        // extent sizes strictly decrease along edges, so index order is topological
        let mut edges = self.edges.clone();
        edges.sort_by_key(|&(u, _)| u);
        for (u, l) in edges {
            rank[l] = rank[l].max(rank[u] + 1);
        }
        rank
    }

    pub fn to_json(&self, ctx: &FormalContext) -> String {
        #[derive(Serialize)]
        struct ConceptDoc {
            extent: Vec<String>,
            intent: Vec<String>,
            extent_pct: f64,
        }
        #[derive(Serialize)]
        struct LatticeDoc {
            concepts: Vec<ConceptDoc>,
            top: usize,
            bottom: usize,
            edges: Vec<[usize; 2]>,
        }
        let doc = LatticeDoc {
            concepts: self
                .concepts
                .iter()
                .map(|c| ConceptDoc {
                    extent: ctx.object_names(&c.extent),
                    intent: ctx.attribute_names(&c.intent),
                    extent_pct: c.extent_pct,
                })
                .collect(),
            top: self.top,
            bottom: self.bottom,
            edges: self.edges.iter().map(|&(u, l)| [u, l]).collect(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("lattice serializes");
        s.push('\n');
        s
    }
}

/// `{a, b, c}`.
pub fn format_set<S: AsRef<str>>(items: &[S]) -> String {
    let mut s = String::from("{");
    for (i, it) in items.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        s.push_str(it.as_ref());
    }
    s.push('}');
    s
}

struct CloseByOne<'a> {
    ctx: &'a FormalContext,
    limit: usize,
    out: Vec<Concept>,
}

impl CloseByOne<'_> {
    fn run(&mut self, extent: BitSet, intent: BitSet, start: usize) -> Result<()> {
        if self.out.len() == self.limit {
            return Err(Error::TooManyConcepts { limit: self.limit });
        }
        let m = self.ctx.attribute_count();
        let full = intent.is_full();
        self.out.push(Concept::new(extent.clone(), intent.clone()));
        if full {
            return Ok(());
        }
        for j in start..m {
            if intent.contains(j) {
                continue;
            }
            let new_extent = extent.intersection(self.ctx.column(j));
            let new_intent = self.ctx.intent_of(&new_extent);
            // canonicity: the closure adds nothing before j
            if new_intent.agrees_below(&intent, j) {
                self.run(new_extent, new_intent, j + 1)?;
            }
        }
        Ok(())
    }
}

/// Every concept of `ctx`, with covering edges, capped at [`DEFAULT_MAX_CONCEPTS`].
pub fn enumerate_concepts(ctx: &FormalContext) -> Result<ConceptLattice> {
    enumerate_concepts_with_limit(ctx, DEFAULT_MAX_CONCEPTS)
}

pub fn enumerate_concepts_with_limit(ctx: &FormalContext, limit: usize) -> Result<ConceptLattice> {
    let extent = BitSet::full(ctx.object_count());
    let intent = ctx.intent_of(&extent);
    let mut cbo = CloseByOne {
        ctx,
        limit,
        out: Vec::new(),
    };
    cbo.run(extent, intent, 0)?;
    Ok(ConceptLattice::from_concepts(ctx, cbo.out))
}

fn covering_edges(ctx: &FormalContext, concepts: &[Concept], by_intent: &HashMap<BitSet, usize>) -> Vec<(usize, usize)> {
    let distinct_rows: Vec<&BitSet> = {
        let mut seen = HashSet::new();
        (0..ctx.object_count())
            .map(|g| ctx.row(g))
            .filter(|r| seen.insert(*r))
            .collect()
    };

    let mut edges = Vec::new();
    for (lower, c) in concepts.iter().enumerate() {
        // B ∩ g′ is an intersection of two intents and therefore an intent
        let mut candidates: Vec<BitSet> = Vec::new();
        for row in &distinct_rows {
            if c.intent.is_subset(row) {
                continue;
            }
            let d = c.intent.intersection(row);
            if !candidates.contains(&d) {
                candidates.push(d);
            }
        }
        for (i, d) in candidates.iter().enumerate() {
            let dominated = candidates
                .iter()
                .enumerate()
                .any(|(j, e)| i != j && d.is_subset(e));
            if !dominated {
                edges.push((by_intent[d], lower));
            }
        }
    }
    edges.sort_unstable();
    edges
}

/// Exhaustive reference implementations, exponential in the attribute count.
pub mod reference {
    use super::*;

    /// Closes every attribute subset and keeps the distinct results.
    pub fn brute_force_concepts(ctx: &FormalContext) -> Vec<Concept> {
        let m = ctx.attribute_count();
        assert!(m < 24, "brute force over {m} attributes is not feasible");
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for mask in 0u32..(1u32 << m) {
            let subset = BitSet::from_indices(m, (0..m).filter(|&j| mask >> j & 1 == 1));
            let extent = ctx.extent_of(&subset);
            let intent = ctx.intent_of(&extent);
            if seen.insert(intent.clone()) {
                out.push(Concept::new(extent, intent));
            }
        }
        out.sort_by(concept_order);
        out
    }

    /// Covering pairs by pairwise comparison followed by transitive reduction.
    pub fn quadratic_covering_edges(concepts: &[Concept]) -> Vec<(usize, usize)> {
        let n = concepts.len();
        let less = |l: usize, u: usize| l != u && order_leq(&concepts[l], &concepts[u]);
        let mut edges = Vec::new();
        for u in 0..n {
            for l in 0..n {
                if less(l, u) && !(0..n).any(|m| less(l, m) && less(m, u)) {
                    edges.push((u, l));
                }
            }
        }
        edges.sort_unstable();
        edges
    }
}
