#ifndef SEMLATTICE_H
#define SEMLATTICE_H

/* Generated by cbindgen from crates/ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  SL_STATUS_OK = 0,
  SL_STATUS_NULL_POINTER = 1,
  SL_STATUS_INVALID_UTF8 = 2,
  SL_STATUS_PARSE = 3,
  SL_STATUS_INVALID_INPUT = 4,
  SL_STATUS_EMPTY_CONTEXT = 5,
  SL_STATUS_UNKNOWN_NAME = 6,
  SL_STATUS_TOO_MANY_CONCEPTS = 7,
  SL_STATUS_PANIC = 8,
} SlStatus;

typedef enum {
  SL_LABELING_FULL = 0,
  SL_LABELING_REDUCED = 1,
} SlLabeling;

/**
 * Opaque formal context.
 */
typedef struct SlContext SlContext;

/**
 * Opaque concept lattice; keeps its own copy of the context.
 */
typedef struct SlLattice SlLattice;

typedef struct {
  size_t theta;
  bool strict_theta;
  size_t min_size;
  size_t max_size;
  double min_supp;
  double min_conf;
} SlMiningParams;

typedef struct {
  SlLabeling labeling;
  bool hide_empty_bottom;
  bool show_extent_pct;
} SlDotOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *sl_last_error_message(void);

/**
 * # Safety
 * `s` must come from this library or be NULL.
 */
void sl_string_free(char *s);

SlMiningParams sl_mining_params_default(void);

/**
 * Parses the context document (`objects`, `attributes`, `rows`).
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
SlStatus sl_context_from_json(const char *json, SlContext **out);

/**
 * Builds a context from a JSONL corpus and a semantic-field document.
 * Messages are tokenized with the built-in stop words and no frequency
 * filtering.
 *
 * # Safety
 * Both strings must be NUL-terminated; `out` must be writable.
 */
SlStatus sl_context_from_corpus(const char *corpus_jsonl, const char *field_text, SlContext **out);

/**
 * # Safety
 * `ctx` must come from this library or be NULL; it is invalid afterwards.
 */
void sl_context_free(SlContext *ctx);

/**
 * # Safety
 * `ctx` must be a live handle or NULL (returns 0).
 */
size_t sl_context_object_count(const SlContext *ctx);

/**
 * # Safety
 * `ctx` must be a live handle or NULL (returns 0).
 */
size_t sl_context_attribute_count(const SlContext *ctx);

/**
 * # Safety
 * `ctx` must be a live handle; `out` must be writable.
 */
SlStatus sl_context_to_json(const SlContext *ctx, char **out);

/**
 * Enumerates every concept. `max_concepts == 0` selects the default cap.
 *
 * # Safety
 * `ctx` must be a live handle; `out` must be writable.
 */
SlStatus sl_lattice_build(const SlContext *ctx, size_t max_concepts, SlLattice **out);

/**
 * # Safety
 * `lattice` must come from this library or be NULL.
 */
void sl_lattice_free(SlLattice *lattice);

/**
 * # Safety
 * `lattice` must be a live handle or NULL (returns 0).
 */
size_t sl_lattice_concept_count(const SlLattice *lattice);

/**
 * # Safety
 * `lattice` must be a live handle or NULL (returns 0).
 */
size_t sl_lattice_edge_count(const SlLattice *lattice);

/**
 * # Safety
 * `lattice` must be a live handle or NULL (returns 0).
 */
size_t sl_lattice_top(const SlLattice *lattice);

/**
 * # Safety
 * `lattice` must be a live handle or NULL (returns 0).
 */
size_t sl_lattice_bottom(const SlLattice *lattice);

/**
 * # Safety
 * `lattice` must be a live handle; `out` must be writable.
 */
SlStatus sl_lattice_to_json(const SlLattice *lattice, char **out);

/**
 * `options` may be NULL for full labels, bottom shown, no percentages.
 *
 * # Safety
 * `lattice` must be a live handle; `out` must be writable.
 */
SlStatus sl_lattice_to_dot(const SlLattice *lattice, const SlDotOptions *options, char **out);

/**
 * Ideal/filter report for the concept generated by the whitespace-separated
 * attributes in `query`.
 *
 * # Safety
 * `lattice` must be a live handle, `query` NUL-terminated, `out` writable.
 */
SlStatus sl_lattice_ideal_filter(const SlLattice *lattice, const char *query, char **out);

/**
 * Frequent itemsets, one `{a, b}<TAB>count` per line.
 *
 * # Safety
 * `ctx` and `params` must be valid; `out` must be writable.
 */
SlStatus sl_itemsets(const SlContext *ctx, const SlMiningParams *params, char **out);

/**
 * Association rule table (tab-separated, with header).
 *
 * # Safety
 * `ctx` and `params` must be valid; `out` must be writable.
 */
SlStatus sl_rules(const SlContext *ctx, const SlMiningParams *params, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEMLATTICE_H */
