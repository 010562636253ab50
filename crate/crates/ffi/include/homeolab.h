#ifndef HOMEOLAB_H
#define HOMEOLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define HL_ABI_VERSION 1

typedef enum HlStatus {
  HL_STATUS_OK = 0,
  HL_STATUS_NULL_ARGUMENT = 1,
  HL_STATUS_INVALID_UTF8 = 2,
  HL_STATUS_PARSE_ERROR = 3,
  HL_STATUS_PRECONDITION = 4,
  HL_STATUS_OUT_OF_RANGE = 5,
  HL_STATUS_PANIC = 6,
} HlStatus;

typedef enum HlVariant {
  HL_VARIANT_COHOMEOLOGY = 0,
  HL_VARIANT_HOMEOLOGY = 1,
} HlVariant;

typedef struct HlComplex HlComplex;

typedef struct HlPage HlPage;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

uint32_t hl_abi_version(void);

/**
 * Message of the last failed call on this thread; empty after a success. Valid until the next call.
 */
const char *hl_last_error(void);

/**
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum HlStatus hl_complex_from_json(const char *json, struct HlComplex **out);

/**
 * One facet per line, whitespace-separated vertex names.
 *
 * # Safety
 * As for [`hl_complex_from_json`].
 */
enum HlStatus hl_complex_from_text(const char *src, struct HlComplex **out);

/**
 * Built-in complexes: `disk:3`, `sphere:2`, `cycle:5`, `point`, ...
 *
 * # Safety
 * As for [`hl_complex_from_json`].
 */
enum HlStatus hl_complex_generate(const char *spec, struct HlComplex **out);

/**
 * # Safety
 * `k` must come from this library and not be used afterwards. Null is ignored.
 */
void hl_complex_free(struct HlComplex *k);

/**
 * # Safety
 * `k` must be a live handle and `vertices`, `dim` valid pointers.
 */
enum HlStatus hl_complex_shape(const struct HlComplex *k, size_t *vertices, int32_t *dim);

/**
 * The complex as JSON, to be released with [`hl_string_free`].
 *
 * # Safety
 * `k` must be a live handle and `out` a valid pointer.
 */
enum HlStatus hl_complex_to_json(const struct HlComplex *k, char **out);

/**
 * Page `r` of the (reduced) homeology or cohomeology spectral sequence over `coeff` (`Z`, `Q`, `Z2`, ...).
 *
 * # Safety
 * `k` must be a live handle, `coeff` a NUL-terminated string and `out` a valid pointer.
 */
enum HlStatus hl_page_compute(const struct HlComplex *k,
                              enum HlVariant variant,
                              bool reduced,
                              size_t r,
                              const char *coeff,
                              struct HlPage **out);

/**
 * # Safety
 * `p` must come from this library and not be used afterwards. Null is ignored.
 */
void hl_page_free(struct HlPage *p);

/**
 * Number of nonzero entries, listed in `(s, t)` order.
 *
 * # Safety
 * `p` must be a live handle and `n` a valid pointer.
 */
enum HlStatus hl_page_len(const struct HlPage *p, size_t *n);

/**
 * Bidegree, free rank and number of torsion summands of the `i`-th nonzero entry.
 *
 * # Safety
 * `p` must be a live handle and the outputs valid pointers.
 */
enum HlStatus hl_page_entry(const struct HlPage *p,
                            size_t i,
                            int32_t *s,
                            int32_t *t,
                            size_t *free_rank,
                            size_t *torsion);

/**
 * Free rank and number of torsion summands at `(s, t)`; zero outside the support.
 *
 * # Safety
 * `p` must be a live handle and the outputs valid pointers.
 */
enum HlStatus hl_page_group(const struct HlPage *p,
                            int32_t s,
                            int32_t t,
                            size_t *free_rank,
                            size_t *torsion);

/**
 * The page in the JSON report schema, to be released with [`hl_string_free`].
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum HlStatus hl_page_to_json(const struct HlPage *p, bool with_differentials, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. Null is ignored.
 */
void hl_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* HOMEOLAB_H */
