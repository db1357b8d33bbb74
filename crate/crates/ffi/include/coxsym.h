#ifndef COXSYM_H
#define COXSYM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CoxsymClass {
  COXSYM_CLASS_FINITE = 0,
  COXSYM_CLASS_AFFINE = 1,
  COXSYM_CLASS_COMPACT_HYPERBOLIC = 2,
  COXSYM_CLASS_NON_COMPACT_HYPERBOLIC = 3,
  COXSYM_CLASS_INDEFINITE = 4,
} CoxsymClass;

/**
 * Result code of every fallible call.
 */
typedef enum CoxsymStatus {
  COXSYM_STATUS_OK = 0,
  COXSYM_STATUS_CHECK_FAILED = 1,
  COXSYM_STATUS_PARSE_ERROR = 2,
  COXSYM_STATUS_EXCEEDED = 3,
  COXSYM_STATUS_NULL_POINTER = 4,
  COXSYM_STATUS_INVALID_ARGUMENT = 5,
  COXSYM_STATUS_INTERNAL = 6,
} CoxsymStatus;

/**
 * A Coxeter diagram.
 */
typedef struct CoxsymDiagram CoxsymDiagram;

/**
 * The analysis of a diagram at one node.
 */
typedef struct CoxsymReport CoxsymReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or an empty string.
 * The pointer stays valid until the next `coxsym_*` call on this thread.
 */
const char *coxsym_last_error(void);

/**
 * Parses the diagram text format into `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CoxsymStatus coxsym_diagram_parse(const char *text, struct CoxsymDiagram **out);

/**
 * Builds a named type such as `F4`, `~E8` or `I2(7)` into `*out`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CoxsymStatus coxsym_diagram_from_type(const char *name, struct CoxsymDiagram **out);

/**
 * # Safety
 * `d` must come from a `coxsym_diagram_*` constructor or be null.
 */
void coxsym_diagram_free(struct CoxsymDiagram *d);

/**
 * Number of nodes, or 0 for a null handle.
 *
 * # Safety
 * `d` must be a live diagram handle or null.
 */
size_t coxsym_diagram_rank(const struct CoxsymDiagram *d);

/**
 * Type name such as `B_3 x A_1`; release with `coxsym_string_free`.
 *
 * # Safety
 * `d` must be a live diagram handle or null.
 */
char *coxsym_diagram_name(const struct CoxsymDiagram *d);

/**
 * # Safety
 * `d` must be a live diagram handle and `out` a valid pointer.
 */
enum CoxsymStatus coxsym_diagram_classify(const struct CoxsymDiagram *d, enum CoxsymClass *out);

/**
 * Analyzes the diagram at `node` (one-based). `max_cosets = 0` selects
 * the default limit. On `CheckFailed` the report is still written.
 *
 * # Safety
 * `d` must be a live diagram handle and `out` a valid pointer.
 */
enum CoxsymStatus coxsym_analyze(const struct CoxsymDiagram *d,
                                 size_t node,
                                 size_t max_cosets,
                                 struct CoxsymReport **out);

/**
 * Like `coxsym_analyze`, running every independent check.
 *
 * # Safety
 * `d` must be a live diagram handle and `out` a valid pointer.
 */
enum CoxsymStatus coxsym_verify(const struct CoxsymDiagram *d,
                                size_t node,
                                size_t max_cosets,
                                struct CoxsymReport **out);

/**
 * # Safety
 * `r` must come from `coxsym_analyze`/`coxsym_verify` or be null.
 */
void coxsym_report_free(struct CoxsymReport *r);

/**
 * Index `m`, or 0 for a null handle.
 *
 * # Safety
 * `r` must be a live report handle or null.
 */
size_t coxsym_report_m(const struct CoxsymReport *r);

/**
 * # Safety
 * `r` must be a live report handle or null.
 */
bool coxsym_report_strict(const struct CoxsymReport *r);

/**
 * Number of checks that failed.
 *
 * # Safety
 * `r` must be a live report handle or null.
 */
size_t coxsym_report_failed_checks(const struct CoxsymReport *r);

/**
 * The table row `W | t | W' | C | m | relations`.
 *
 * # Safety
 * `r` must be a live report handle or null.
 */
char *coxsym_report_row(const struct CoxsymReport *r);

/**
 * The report as JSON.
 *
 * # Safety
 * `r` must be a live report handle or null.
 */
char *coxsym_report_json(const struct CoxsymReport *r);

/**
 * The presentation `Q` in the native text format.
 *
 * # Safety
 * `r` must be a live report handle or null.
 */
char *coxsym_report_presentation(const struct CoxsymReport *r);

/**
 * Size of the orbit of the simple root at `node` under the other
 * reflections. `limit = 0` selects the default.
 *
 * # Safety
 * `d` must be a live diagram handle and `out` a valid pointer.
 */
enum CoxsymStatus coxsym_orbit_size(const struct CoxsymDiagram *d,
                                    size_t node,
                                    size_t limit,
                                    size_t *out);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library or be null, and is freed once.
 */
void coxsym_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COXSYM_H */
