#ifndef TRIPLETREP_H
#define TRIPLETREP_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TrpStatus {
  TRP_STATUS_OK = 0,
  TRP_STATUS_NULL_POINTER = 1,
  TRP_STATUS_INVALID_UTF8 = 2,
  TRP_STATUS_INVALID_SPEC = 3,
  TRP_STATUS_INVALID_WORD = 4,
  TRP_STATUS_INVALID_CONFIG = 5,
  TRP_STATUS_FAILED = 6,
  TRP_STATUS_PANIC = 7,
} TrpStatus;

/**
 * A representation of a triplet-family group.
 */
typedef struct TrpRep TrpRep;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a representation from a spec such as `"mu:n=3,k=1"`.
 *
 * # Safety
 * `spec` must be a nul-terminated string and `out` a writable pointer.
 */
enum TrpStatus trp_rep_new(const char *spec, struct TrpRep **out);

/**
 * # Safety
 * `rep` must come from [`trp_rep_new`] and not be freed twice; null is ignored.
 */
void trp_rep_free(struct TrpRep *rep);

/**
 * Size of the matrices (or rank of the free group) the representation acts on.
 *
 * # Safety
 * `rep` must be a live handle and `out` writable.
 */
enum TrpStatus trp_rep_dimension(const struct TrpRep *rep, size_t *out);

/**
 * Image of a word such as `"l1 r2^-1 (l1 l2)^3"`, one matrix row per line.
 *
 * # Safety
 * `rep` must be a live handle, `word` nul-terminated and `out` writable.
 * The string written to `out` is released with [`trp_string_free`].
 */
enum TrpStatus trp_rep_eval(const struct TrpRep *rep, const char *word, char **out);

/**
 * Counts the defining relations of the representation's group and how
 * many of them hold.
 *
 * # Safety
 * `rep` must be a live handle; `passed` and `total` writable.
 */
enum TrpStatus trp_rep_check_relations(const struct TrpRep *rep, size_t *passed, size_t *total);

/**
 * Runs a named suite and writes its JSON report. `n_min = n_max = 0`
 * keeps the suite's default range.
 *
 * # Safety
 * `suite` must be nul-terminated and `out` writable. The string written to
 * `out` is released with [`trp_string_free`].
 */
enum TrpStatus trp_run_suite(const char *suite,
                             size_t n_min,
                             size_t n_max,
                             bool *all_passed,
                             char **out);

/**
 * Exhaustive census over `F_p` (`kind` is triplet, virtual, welded or l3),
 * written as a JSON report.
 *
 * # Safety
 * `kind` must be nul-terminated and `out` writable. The string written to
 * `out` is released with [`trp_string_free`].
 */
enum TrpStatus trp_census(const char *kind, uint32_t p, bool *passed, char **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice; null is ignored.
 */
void trp_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call into the library on the same thread.
 */
const char *trp_last_error(void);

/**
 * Library version as a static string.
 */
const char *trp_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRIPLETREP_H */
