//! Semantic concept lattices for microblog corpora.
//!
//! A corpus of short messages is tokenized and filtered by lexeme frequency,
//! then projected onto a semantic field (a keyword set) to form a formal
//! context. From the context the crate enumerates the concept lattice with
//! its Hasse diagram, answers order ideal and filter queries, mines frequent
//! keyword sets and derives association rules and implications.
//!
//! ```
//! use semlattice::{enumerate_concepts, generate_rules, mine_frequent_itemsets, FormalContext, MiningParams};
//!
//! let ctx = FormalContext::from_json(r#"{"objects":["1","2","3","4"],
//!     "attributes":["a","b","c","d"],"rows":["1100","1010","1110","0001"]}"#)?;
//! let lattice = enumerate_concepts(&ctx)?;
//! assert_eq!((lattice.len(), lattice.edges().len()), (7, 8));
//!
//! let params = MiningParams { theta: 2, min_conf: 0.6, ..Default::default() };
//! let rules = generate_rules(&ctx, &mine_frequent_itemsets(&ctx, &params), &params);
//! assert_eq!(rules.len(), 4);
//! # Ok::<(), semlattice::Error>(())
//! ```

pub mod bitset;
pub mod config;
pub mod context;
pub mod corpus;
pub mod dot;
mod error;
pub mod lattice;
pub mod pipeline;
pub mod rules;

pub use bitset::BitSet;
pub use context::{build_context, FormalContext, SemanticField};
pub use corpus::{
    build_dictionary, filter_dictionary, filter_messages, parse_messages, tokenize, CorpusConfig, FrequencyDictionary,
    InputFormat, Message,
};
pub use dot::{to_dot, DotOptions, Labeling};
pub use error::{Error, Result};
pub use lattice::{enumerate_concepts, enumerate_concepts_with_limit, order_leq, Concept, ConceptLattice};
pub use rules::{
    confidence, generate_rules, is_implication, mine_frequent_itemsets, support, AssociationRule, Itemset,
    MiningParams,
};
