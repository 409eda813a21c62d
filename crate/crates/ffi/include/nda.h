#ifndef NDA_H
#define NDA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes.
 */
typedef enum NdaStatus {
  /**
   * Success.
   */
  NDA_STATUS_OK = 0,
  /**
   * Malformed word, expression or JSON.
   */
  NDA_STATUS_PARSE = 1,
  /**
   * Well-formed input that violates a precondition.
   */
  NDA_STATUS_SEMANTIC = 2,
  /**
   * An internal invariant was breached.
   */
  NDA_STATUS_INTERNAL = 3,
  /**
   * A required pointer argument was null.
   */
  NDA_STATUS_NULL_ARGUMENT = 4,
  /**
   * A string argument was not valid UTF-8.
   */
  NDA_STATUS_INVALID_UTF8 = 5,
  /**
   * The library panicked; the call had no effect.
   */
  NDA_STATUS_PANIC = 6,
} NdaStatus;

/**
 * An automaton handle.
 */
typedef struct NdaAutomaton NdaAutomaton;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or null. The pointer
 * stays valid until the next library call on the same thread.
 */
const char *nda_last_error(void);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string obtained from this library, not yet freed.
 */
void nda_string_free(char *s);

/**
 * The profile of a word as JSON `{"rc":[..],"lo":[..],"lc":[..],"rns":bool}`.
 *
 * # Safety
 * `word` must be a NUL-terminated string; `out_json` must be writable.
 */
enum NdaStatus nda_word_classify(const char *word, char **out_json);

/**
 * Whether two right-non-shadowing words are α-equivalent.
 *
 * # Safety
 * `left` and `right` must be NUL-terminated strings; `out` must be writable.
 */
enum NdaStatus nda_word_alpha_eq(const char *left, const char *right, bool *out);

/**
 * Parses an automaton from its JSON encoding.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum NdaStatus nda_automaton_from_json(const char *json, struct NdaAutomaton **out);

/**
 * Releases an automaton handle. Null is ignored.
 *
 * # Safety
 * `a` must be null or a handle from this library, not yet freed.
 */
void nda_automaton_free(struct NdaAutomaton *a);

/**
 * The JSON encoding of an automaton.
 *
 * # Safety
 * `a` must be a live handle; `out_json` must be writable.
 */
enum NdaStatus nda_automaton_to_json(const struct NdaAutomaton *a, char **out_json);

/**
 * Checks the automaton conditions; the violations, if any, are available
 * through [`nda_last_error`] as JSON.
 *
 * # Safety
 * `a` must be a live handle; `out_valid` must be writable.
 */
enum NdaStatus nda_automaton_validate(const struct NdaAutomaton *a, bool *out_valid);

/**
 * Runs a word, literally or up to α-equivalence.
 *
 * # Safety
 * `a` must be a live handle, `word` a NUL-terminated string, `out` writable.
 */
enum NdaStatus nda_automaton_run(const struct NdaAutomaton *a,
                                 const char *word,
                                 bool alpha,
                                 bool *out);

/**
 * Determinizes an automaton into a new handle.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum NdaStatus nda_automaton_determinize(const struct NdaAutomaton *a, struct NdaAutomaton **out);

/**
 * Whether the automaton is deterministic.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum NdaStatus nda_automaton_is_deterministic(const struct NdaAutomaton *a, bool *out);

/**
 * The number of states.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum NdaStatus nda_automaton_state_count(const struct NdaAutomaton *a, size_t *out);

/**
 * Compiles a regular deallocation expression into an automaton.
 *
 * # Safety
 * `regex` must be a NUL-terminated string; `out` must be writable.
 */
enum NdaStatus nda_regex_compile(const char *regex, struct NdaAutomaton **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NDA_H */
