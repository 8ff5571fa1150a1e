#ifndef HJLAB_H
#define HJLAB_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum HjStatus {
  HJ_STATUS_OK = 0,
  HJ_STATUS_NULL_ARGUMENT = 1,
  HJ_STATUS_INVALID_ARGUMENT = 2,
  HJ_STATUS_VERIFICATION_FAILED = 3,
  HJ_STATUS_BUDGET_EXCEEDED = 4,
  HJ_STATUS_NOT_FOUND = 5,
  HJ_STATUS_IO = 6,
  HJ_STATUS_PANIC = 7,
} HjStatus;

typedef enum HjVerdict {
  HJ_VERDICT_BAD = 0,
  HJ_VERDICT_NONE_EXISTS = 1,
  HJ_VERDICT_BUDGET_EXCEEDED = 2,
} HjVerdict;

typedef struct HjCertificate HjCertificate;

/**
 * Outcome of [`hj_compute`].
 */
typedef struct HjResult HjResult;

/**
 * A partition number with its alphabet and color counts.
 */
typedef struct HjSpec HjSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *hj_last_error_message(void);

/**
 * Frees a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void hj_string_free(char *s);

/**
 * Library version, statically allocated.
 */
const char *hj_version(void);

/**
 * Parses `kind` (`hj:1`, `f9sn:2,1`, `oplus`, ...) into a new spec.
 *
 * # Safety
 * `kind` must be a NUL-terminated string and `out` writable.
 */
enum HjStatus hj_spec_new(const char *kind, size_t h, size_t c, struct HjSpec **out);

/**
 * # Safety
 * `spec` must come from [`hj_spec_new`] or be NULL.
 */
void hj_spec_free(struct HjSpec *spec);

/**
 * Display form such as `hj(1;2,2)`; NULL if `spec` is NULL.
 *
 * # Safety
 * `spec` must be a live handle or NULL.
 */
char *hj_spec_to_string(const struct HjSpec *spec);

/**
 * Computes the number by scanning sizes `1..=max_k`. `max_seconds <= 0`
 * means no time limit; `threads == 0` means one.
 *
 * # Safety
 * `spec` must be a live handle and `out` writable.
 */
enum HjStatus hj_compute(const struct HjSpec *spec,
                         size_t max_k,
                         double max_seconds,
                         size_t threads,
                         struct HjResult **out);

/**
 * # Safety
 * `result` must come from [`hj_compute`] or be NULL.
 */
void hj_result_free(struct HjResult *result);

/**
 * The exact value, or `HJ_STATUS_NOT_FOUND` when only bounds are known.
 *
 * # Safety
 * `result` must be a live handle and `value` writable.
 */
enum HjStatus hj_result_value(const struct HjResult *result, size_t *value);

/**
 * Lower bound, and the upper bound when `has_upper` is set.
 *
 * # Safety
 * `result` must be a live handle and the out pointers writable.
 */
enum HjStatus hj_result_bounds(const struct HjResult *result,
                               size_t *lower,
                               size_t *upper,
                               bool *has_upper);

/**
 * The bad-coloring certificate behind the lower bound.
 *
 * # Safety
 * `result` must be a live handle and `out` writable.
 */
enum HjStatus hj_result_lower_certificate(const struct HjResult *result,
                                          struct HjCertificate **out);

/**
 * Searches for a coloring without a witness at size `k`. `max_nodes == 0`
 * means unlimited. A certificate is stored in `cert` (if non-NULL) unless
 * the budget ran out, in which case `*cert` is set to NULL.
 *
 * # Safety
 * `spec` must be a live handle, `verdict` writable, `cert` writable or NULL.
 */
enum HjStatus hj_find_bad(const struct HjSpec *spec,
                          size_t k,
                          uint64_t max_nodes,
                          enum HjVerdict *verdict,
                          struct HjCertificate **cert);

/**
 * # Safety
 * `path` must be a NUL-terminated string and `out` writable.
 */
enum HjStatus hj_certificate_load(const char *path, struct HjCertificate **out);

/**
 * # Safety
 * `cert` must be a live handle and `path` a NUL-terminated string.
 */
enum HjStatus hj_certificate_save(const struct HjCertificate *cert, const char *path);

/**
 * Re-checks the certificate; `deep` reruns exhaustive searches.
 *
 * # Safety
 * `cert` must be a live handle.
 */
enum HjStatus hj_certificate_verify(const struct HjCertificate *cert, bool deep);

/**
 * The certificate as JSON; NULL on failure.
 *
 * # Safety
 * `cert` must be a live handle or NULL.
 */
char *hj_certificate_to_json(const struct HjCertificate *cert);

/**
 * # Safety
 * `cert` must come from this library or be NULL.
 */
void hj_certificate_free(struct HjCertificate *cert);

/**
 * Orders two bounds (`shelah24`, `gowers:2,3`, `lit:N`, expressions):
 * `*ordering` is -1, 0 or 1. `max_bits == 0` uses the default.
 *
 * # Safety
 * `a` and `b` must be NUL-terminated strings and `ordering` writable.
 */
enum HjStatus hj_tower_compare(const char *a, const char *b, uint64_t max_bits, int32_t *ordering);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HJLAB_H */
