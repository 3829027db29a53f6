#ifndef FLAGCLUSTER_H
#define FLAGCLUSTER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum FcStatus {
  FC_STATUS_OK = 0,
  FC_STATUS_NULL_ARGUMENT = 1,
  FC_STATUS_INVALID_UTF8 = 2,
  FC_STATUS_INVALID_INPUT = 3,
  FC_STATUS_WORD_REJECTED = 4,
  FC_STATUS_NOT_MUTABLE = 5,
  FC_STATUS_INEXACT_DIVISION = 6,
  FC_STATUS_CAP_EXCEEDED = 7,
  FC_STATUS_OUT_OF_RANGE = 8,
  FC_STATUS_PANIC = 9,
} FcStatus;

/**
 * Opaque seed handle.
 */
typedef struct FcSeed FcSeed;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, empty after a success.
 * Valid until the next library call on the same thread.
 */
const char *fc_last_error(void);

/**
 * Library version, a static string.
 */
const char *fc_version(void);

/**
 * Initial seed for diagram `type_name` (e.g. "A5") and the vertex set
 * `j[0..j_len]`. `extend` appends the degree rows (type A only);
 * `extended` admits types B, C, F, G.
 *
 * # Safety
 * `type_name` must be a NUL-terminated string, `j` must point to `j_len`
 * values and `out` must be writable.
 */
enum FcStatus fc_seed_new(const char *type_name,
                          const uint32_t *j,
                          size_t j_len,
                          bool extend,
                          bool extended,
                          struct FcSeed **out);

/**
 * Like [`fc_seed_new`] with an explicit reduced word.
 *
 * # Safety
 * As for [`fc_seed_new`]; `word` must point to `word_len` values.
 */
enum FcStatus fc_seed_new_with_word(const char *type_name,
                                    const uint32_t *j,
                                    size_t j_len,
                                    const uint32_t *word,
                                    size_t word_len,
                                    struct FcSeed **out);

/**
 * One of the named presets, e.g. "A5-J13" or "D5-isotropic".
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` writable.
 */
enum FcStatus fc_seed_from_preset(const char *name, struct FcSeed **out);

/**
 * Parses a seed document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum FcStatus fc_seed_from_json(const char *json, struct FcSeed **out);

/**
 * Serializes a seed document; free the result with [`fc_string_free`].
 *
 * # Safety
 * `seed` must be a live handle and `out` writable.
 */
enum FcStatus fc_seed_to_json(const struct FcSeed *seed, char **out);

/**
 * Mutates in place at a column label. When `new_var` is not null it
 * receives the rendering of the new cluster variable.
 *
 * # Safety
 * `seed` must be a live handle, `label` a NUL-terminated string, and
 * `new_var` null or writable.
 */
enum FcStatus fc_seed_mutate(struct FcSeed *seed, const char *label, char **new_var);

/**
 * Number of rows (cluster plus frozen variables); 0 for a null handle.
 *
 * # Safety
 * `seed` must be null or a live handle.
 */
size_t fc_seed_nrows(const struct FcSeed *seed);

/**
 * Number of mutable columns; 0 for a null handle.
 *
 * # Safety
 * `seed` must be null or a live handle.
 */
size_t fc_seed_ncols(const struct FcSeed *seed);

/**
 * Entry `b_{row,col}` of the exchange matrix.
 *
 * # Safety
 * `seed` must be a live handle and `out` writable.
 */
enum FcStatus fc_seed_entry(const struct FcSeed *seed, size_t row, size_t col, int64_t *out);

/**
 * Label of a row; free with [`fc_string_free`].
 *
 * # Safety
 * `seed` must be a live handle and `out` writable.
 */
enum FcStatus fc_seed_row_label(const struct FcSeed *seed, size_t row, char **out);

/**
 * The cluster or frozen variable of a row as a Laurent polynomial in the
 * initial variables; free with [`fc_string_free`].
 *
 * # Safety
 * `seed` must be a live handle and `out` writable.
 */
enum FcStatus fc_seed_variable(const struct FcSeed *seed, size_t row, char **out);

/**
 * Cluster type of the flag variety for `type_name` and `j`, as a JSON
 * verdict. `cap` bounds the search; 0 means the default.
 *
 * # Safety
 * `type_name` must be a NUL-terminated string, `j` must point to `j_len`
 * values and `out` must be writable.
 */
enum FcStatus fc_classify_flag(const char *type_name,
                               const uint32_t *j,
                               size_t j_len,
                               bool extended,
                               uint64_t cap,
                               char **out);

/**
 * Cluster type of a skew-symmetric `n x n` principal part given row-major.
 *
 * # Safety
 * `entries` must point to `n * n` values and `out` must be writable.
 */
enum FcStatus fc_classify_principal(const int64_t *entries, size_t n, uint64_t cap, char **out);

/**
 * Releases a seed handle. Null is ignored.
 *
 * # Safety
 * `seed` must be null or a handle not yet freed.
 */
void fc_seed_free(struct FcSeed *seed);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void fc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FLAGCLUSTER_H */
