//! C ABI over the semlattice library.
//!
//! Contexts and lattices are opaque heap handles created by `sl_*_new`-style
//! constructors and released with the matching `*_free`. Every fallible
//! function returns an [`SlStatus`]; on failure a human-readable message is
//! available from [`sl_last_error_message`] on the same thread.
//!
//! Strings returned through `char **out` parameters are owned by the caller
//! and must be released with [`sl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use semlattice::corpus::default_stop_words;
use semlattice::lattice::DEFAULT_MAX_CONCEPTS;
use semlattice::pipeline::ideal_filter_report;
use semlattice::rules::{itemsets_to_text, rules_to_tsv};
use semlattice::{
    build_context, enumerate_concepts_with_limit, generate_rules, mine_frequent_itemsets, parse_messages, to_dot,
    ConceptLattice, CorpusConfig, DotOptions, Error, FormalContext, InputFormat, Labeling, MiningParams, SemanticField,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    EmptyContext = 5,
    UnknownName = 6,
    TooManyConcepts = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlLabeling {
    Full = 0,
    Reduced = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SlDotOptions {
    pub labeling: SlLabeling,
    pub hide_empty_bottom: bool,
    pub show_extent_pct: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SlMiningParams {
    pub theta: usize,
    pub strict_theta: bool,
    pub min_size: usize,
    pub max_size: usize,
    pub min_supp: f64,
    pub min_conf: f64,
}

impl From<&SlMiningParams> for MiningParams {
    fn from(p: &SlMiningParams) -> Self {
        MiningParams {
            theta: p.theta,
            strict_theta: p.strict_theta,
            min_size: p.min_size,
            max_size: p.max_size,
            min_supp: p.min_supp,
            min_conf: p.min_conf,
        }
    }
}

/// Opaque formal context.
pub struct SlContext {
    inner: FormalContext,
}

/// Opaque concept lattice; keeps its own copy of the context.
pub struct SlLattice {
    ctx: FormalContext,
    lattice: ConceptLattice,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> SlStatus {
    match err {
        Error::Decode(_) => SlStatus::InvalidUtf8,
        Error::Parse { .. } => SlStatus::Parse,
        Error::EmptyContext => SlStatus::EmptyContext,
        Error::UnknownObject(_) | Error::UnknownAttribute(_) => SlStatus::UnknownName,
        Error::TooManyConcepts { .. } => SlStatus::TooManyConcepts,
        _ => SlStatus::InvalidInput,
    }
}

struct Failure(SlStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SlStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SlStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(SlStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(SlStatus::InvalidUtf8, format!("{name}: {e}")))
}

unsafe fn ref_arg<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(SlStatus::NullPointer, format!("{name} is null")))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(SlStatus::NullPointer, "out is null".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(SlStatus::NullPointer, "out is null".into()));
    }
    let c = CString::new(s).map_err(|_| Failure(SlStatus::InvalidInput, "output contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn sl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub extern "C" fn sl_mining_params_default() -> SlMiningParams {
    let d = MiningParams::default();
    SlMiningParams {
        theta: d.theta,
        strict_theta: d.strict_theta,
        min_size: d.min_size,
        max_size: d.max_size,
        min_supp: d.min_supp,
        min_conf: d.min_conf,
    }
}

/// Parses the context document (`objects`, `attributes`, `rows`).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_context_from_json(json: *const c_char, out: *mut *mut SlContext) -> SlStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        let inner = FormalContext::from_json(text)?;
        put(out, SlContext { inner })
    })
}

/// Builds a context from a JSONL corpus and a semantic-field document.
/// Messages are tokenized with the built-in stop words and no frequency
/// filtering.
///
/// # Safety
/// Both strings must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_context_from_corpus(
    corpus_jsonl: *const c_char,
    field_text: *const c_char,
    out: *mut *mut SlContext,
) -> SlStatus {
    guard(|| {
        let corpus = str_arg(corpus_jsonl, "corpus_jsonl")?;
        let field = str_arg(field_text, "field_text")?;
        let cfg = CorpusConfig {
            stop_words: default_stop_words(),
            ..CorpusConfig::permissive()
        };
        let messages = parse_messages(corpus.as_bytes(), InputFormat::Jsonl, &cfg)?;
        let field = SemanticField::parse(field, "field")?;
        let inner = build_context(&messages, &field)?;
        put(out, SlContext { inner })
    })
}

/// # Safety
/// `ctx` must come from this library or be NULL; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn sl_context_free(ctx: *mut SlContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// # Safety
/// `ctx` must be a live handle or NULL (returns 0).
#[no_mangle]
pub unsafe extern "C" fn sl_context_object_count(ctx: *const SlContext) -> usize {
    ctx.as_ref().map_or(0, |c| c.inner.object_count())
}

/// # Safety
/// `ctx` must be a live handle or NULL (returns 0).
#[no_mangle]
pub unsafe extern "C" fn sl_context_attribute_count(ctx: *const SlContext) -> usize {
    ctx.as_ref().map_or(0, |c| c.inner.attribute_count())
}

/// # Safety
/// `ctx` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_context_to_json(ctx: *const SlContext, out: *mut *mut c_char) -> SlStatus {
    guard(|| {
        let ctx = ref_arg(ctx, "ctx")?;
        put_string(out, ctx.inner.to_json())
    })
}

/// Enumerates every concept. `max_concepts == 0` selects the default cap.
///
/// # Safety
/// `ctx` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_lattice_build(
    ctx: *const SlContext,
    max_concepts: usize,
    out: *mut *mut SlLattice,
) -> SlStatus {
    guard(|| {
        let ctx = ref_arg(ctx, "ctx")?;
        let limit = if max_concepts == 0 { DEFAULT_MAX_CONCEPTS } else { max_concepts };
        let lattice = enumerate_concepts_with_limit(&ctx.inner, limit)?;
        put(
            out,
            SlLattice {
                ctx: ctx.inner.clone(),
                lattice,
            },
        )
    })
}

/// # Safety
/// `lattice` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn sl_lattice_free(lattice: *mut SlLattice) {
    if !lattice.is_null() {
        drop(Box::from_raw(lattice));
    }
}

/// # Safety
/// `lattice` must be a live handle or NULL (returns 0).
#[no_mangle]
pub unsafe extern "C" fn sl_lattice_concept_count(lattice: *const SlLattice) -> usize {
    lattice.as_ref().map_or(0, |l| l.lattice.len())
}

/// # Safety
/// `lattice` must be a live handle or NULL (returns 0).
#[no_mangle]
pub unsafe extern "C" fn sl_lattice_edge_count(lattice: *const SlLattice) -> usize {
    lattice.as_ref().map_or(0, |l| l.lattice.edges().len())
}

/// # Safety
/// `lattice` must be a live handle or NULL (returns 0).
#[no_mangle]
pub unsafe extern "C" fn sl_lattice_top(lattice: *const SlLattice) -> usize {
    lattice.as_ref().map_or(0, |l| l.lattice.top())
}

/// # Safety
/// `lattice` must be a live handle or NULL (returns 0).
#[no_mangle]
pub unsafe extern "C" fn sl_lattice_bottom(lattice: *const SlLattice) -> usize {
    lattice.as_ref().map_or(0, |l| l.lattice.bottom())
}

/// # Safety
/// `lattice` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_lattice_to_json(lattice: *const SlLattice, out: *mut *mut c_char) -> SlStatus {
    guard(|| {
        let l = ref_arg(lattice, "lattice")?;
        put_string(out, l.lattice.to_json(&l.ctx))
    })
}

/// `options` may be NULL for full labels, bottom shown, no percentages.
///
/// # Safety
/// `lattice` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_lattice_to_dot(
    lattice: *const SlLattice,
    options: *const SlDotOptions,
    out: *mut *mut c_char,
) -> SlStatus {
    guard(|| {
        let l = ref_arg(lattice, "lattice")?;
        let opts = match options.as_ref() {
            None => DotOptions::default(),
            Some(o) => DotOptions {
                labeling: match o.labeling {
                    SlLabeling::Full => Labeling::Full,
                    SlLabeling::Reduced => Labeling::Reduced,
                },
                hide_empty_bottom: o.hide_empty_bottom,
                show_extent_pct: o.show_extent_pct,
            },
        };
        put_string(out, to_dot(&l.ctx, &l.lattice, &opts))
    })
}

/// Ideal/filter report for the concept generated by the whitespace-separated
/// attributes in `query`.
///
/// # Safety
/// `lattice` must be a live handle, `query` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_lattice_ideal_filter(
    lattice: *const SlLattice,
    query: *const c_char,
    out: *mut *mut c_char,
) -> SlStatus {
    guard(|| {
        let l = ref_arg(lattice, "lattice")?;
        let attrs: Vec<&str> = str_arg(query, "query")?.split_whitespace().collect();
        put_string(out, ideal_filter_report(&l.ctx, &l.lattice, &attrs)?)
    })
}

/// Frequent itemsets, one `{a, b}<TAB>count` per line.
///
/// # Safety
/// `ctx` and `params` must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_itemsets(
    ctx: *const SlContext,
    params: *const SlMiningParams,
    out: *mut *mut c_char,
) -> SlStatus {
    guard(|| {
        let ctx = ref_arg(ctx, "ctx")?;
        let params = MiningParams::from(ref_arg(params, "params")?);
        params.validate()?;
        let sets = mine_frequent_itemsets(&ctx.inner, &params);
        put_string(out, itemsets_to_text(&ctx.inner, &sets))
    })
}

/// Association rule table (tab-separated, with header).
///
/// # Safety
/// `ctx` and `params` must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_rules(ctx: *const SlContext, params: *const SlMiningParams, out: *mut *mut c_char) -> SlStatus {
    guard(|| {
        let ctx = ref_arg(ctx, "ctx")?;
        let params = MiningParams::from(ref_arg(params, "params")?);
        params.validate()?;
        let sets = mine_frequent_itemsets(&ctx.inner, &params);
        let rules = generate_rules(&ctx.inner, &sets, &params);
        put_string(out, rules_to_tsv(&ctx.inner, &rules))
    })
}
