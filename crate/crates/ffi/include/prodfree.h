#ifndef PRODFREE_H
#define PRODFREE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PfStatus {
  PF_STATUS_OK = 0,
  PF_STATUS_NULL_POINTER = 1,
  PF_STATUS_INVALID_UTF8 = 2,
  PF_STATUS_PARSE = 3,
  PF_STATUS_INVALID_ARGUMENT = 4,
  PF_STATUS_BUDGET = 5,
  PF_STATUS_PRECONDITION = 6,
  PF_STATUS_PANIC = 7,
} PfStatus;

/**
 * Opaque handle to a complete automaton.
 */
typedef struct PfDfa PfDfa;

/**
 * Opaque handle to an explicit truncated set.
 */
typedef struct PfSet PfSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *pf_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void pf_string_free(char *s);

/**
 * Parses an automaton in the text format.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum PfStatus pf_dfa_parse(const char *text, struct PfDfa **out);

/**
 * The odd-occurrence automaton for `gamma` over `alphabet`.
 *
 * # Safety
 * Both strings must be nul-terminated; `out` must be writable.
 */
enum PfStatus pf_dfa_odd_occurrence(const char *alphabet, const char *gamma, struct PfDfa **out);

/**
 * # Safety
 * `dfa` must be null or a live handle from this library.
 */
void pf_dfa_free(struct PfDfa *dfa);

/**
 * Serializes an automaton to its text format.
 *
 * # Safety
 * `dfa` must be a live handle; `out` must be writable.
 */
enum PfStatus pf_dfa_to_text(const struct PfDfa *dfa, char **out);

/**
 * Sets `*product_free` to 1 or 0.
 *
 * # Safety
 * `dfa` must be a live handle; `product_free` must be writable.
 */
enum PfStatus pf_dfa_check(const struct PfDfa *dfa, int *product_free);

/**
 * The layer density `d(n)` as `"num/den"`.
 *
 * # Safety
 * `dfa` must be a live handle; `out` must be writable.
 */
enum PfStatus pf_dfa_layer_density(const struct PfDfa *dfa, size_t n, char **out);

/**
 * Parses an explicit set in the word-list format.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum PfStatus pf_set_parse(const char *text, struct PfSet **out);

/**
 * # Safety
 * `set` must be null or a live handle from this library.
 */
void pf_set_free(struct PfSet *set);

/**
 * Serializes a set to the word-list format.
 *
 * # Safety
 * `set` must be a live handle; `out` must be writable.
 */
enum PfStatus pf_set_to_text(const struct PfSet *set, char **out);

/**
 * Sets `*product_free` to 1 or 0, treating the horizon as the universe.
 *
 * # Safety
 * `set` must be a live handle; `product_free` must be writable.
 */
enum PfStatus pf_set_check(const struct PfSet *set, int *product_free);

/**
 * The layer density `d(n)` as `"num/den"`.
 *
 * # Safety
 * `set` must be a live handle; `out` must be writable.
 */
enum PfStatus pf_set_layer_density(const struct PfSet *set, size_t n, char **out);

/**
 * Maximum mean-density product-free subset of the ball of radius
 * `horizon`, as a JSON summary. `witness_out` may be null; otherwise it
 * receives the witness set.
 *
 * # Safety
 * `alphabet` must be nul-terminated; `json_out` must be writable.
 */
enum PfStatus pf_search(const char *alphabet,
                        size_t horizon,
                        uint64_t budget,
                        char **json_out,
                        struct PfSet **witness_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PRODFREE_H */
