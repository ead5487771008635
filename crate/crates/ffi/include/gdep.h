#ifndef GDEP_H
#define GDEP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GdepDirection {
  GDEP_DIRECTION_TO_GDEP = 0,
  GDEP_DIRECTION_TO_FDEP = 1,
} GdepDirection;

typedef enum GdepStatus {
  GDEP_STATUS_OK = 0,
  GDEP_STATUS_NULL_POINTER = 1,
  GDEP_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed CSV, atom-set or structure text.
   */
  GDEP_STATUS_FORMAT = 3,
  /**
   * Malformed atom or formula.
   */
  GDEP_STATUS_SYNTAX = 4,
  /**
   * A variable, relation or value that does not fit the data.
   */
  GDEP_STATUS_DOMAIN = 5,
  /**
   * A size guard tripped.
   */
  GDEP_STATUS_SIZE = 6,
  GDEP_STATUS_CONTRACT = 7,
  GDEP_STATUS_PANIC = 8,
} GdepStatus;

/**
 * Opaque atom-set handle.
 */
typedef struct GdepAtomSet GdepAtomSet;

/**
 * Opaque team handle.
 */
typedef struct GdepTeam GdepTeam;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a CSV team (header row, unquoted cells).
 *
 * # Safety
 * `csv` must be a NUL-terminated string; `out` must be writable.
 */
enum GdepStatus gdep_team_from_csv(const char *csv, struct GdepTeam **out);

/**
 * # Safety
 * `team` must come from [`gdep_team_from_csv`] and not be freed yet, or be null.
 */
void gdep_team_free(struct GdepTeam *team);

/**
 * Number of rows, or 0 for a null handle.
 *
 * # Safety
 * `team` must be a live handle or null.
 */
size_t gdep_team_rows(const struct GdepTeam *team);

/**
 * Checks a `gdep(..)` or `dep(..)` atom against a team.
 *
 * # Safety
 * `team` must be a live handle, `atom` NUL-terminated, `holds` writable.
 */
enum GdepStatus gdep_check(const struct GdepTeam *team, const char *atom, bool *holds);

/**
 * Parses an atom-set file: one `gdep(..)` per line, `#` comments.
 *
 * # Safety
 * `source` must be NUL-terminated; `out` must be writable.
 */
enum GdepStatus gdep_atomset_parse(const char *source, struct GdepAtomSet **out);

/**
 * # Safety
 * `set` must come from [`gdep_atomset_parse`] and not be freed yet, or be null.
 */
void gdep_atomset_free(struct GdepAtomSet *set);

/**
 * Decides whether `sigma` entails `goal`. When `witness` is not null it
 * receives the derivation text, or the counter-model as CSV.
 *
 * # Safety
 * `sigma` must be a live handle, `goal` NUL-terminated, `derivable`
 * writable, and `witness` writable or null.
 */
enum GdepStatus gdep_entails(const struct GdepAtomSet *sigma,
                             const char *goal,
                             bool *derivable,
                             char **witness);

/**
 * Builds an Armstrong relation as CSV. `vars` lists the universe separated
 * by commas or spaces; null means the variables of `sigma`.
 *
 * # Safety
 * `sigma` must be a live handle, `vars` NUL-terminated or null, `csv` writable.
 */
enum GdepStatus gdep_armstrong(const struct GdepAtomSet *sigma, const char *vars, char **csv);

/**
 * Rewrites an atom or formula; atoms yield one replacement per line.
 *
 * # Safety
 * `input` must be NUL-terminated; `out` must be writable.
 */
enum GdepStatus gdep_translate(const char *input, enum GdepDirection direction, char **out);

/**
 * Evaluates a formula in a structure (structure-file text) on `team`, or
 * as a sentence when `team` is null. Uses the default search bounds.
 *
 * # Safety
 * `structure` and `formula` must be NUL-terminated, `team` a live handle
 * or null, `holds` writable.
 */
enum GdepStatus gdep_eval(const char *structure,
                          const char *formula,
                          const struct GdepTeam *team,
                          bool *holds);

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call into this library on the same thread; do not free it.
 */
const char *gdep_last_error_message(void);

/**
 * # Safety
 * `s` must be a string returned by this library and not freed yet, or null.
 */
void gdep_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GDEP_H */
