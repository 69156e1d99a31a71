#ifndef PCARR_H
#define PCARR_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Arrangement classes accepted by `pcarr_enumerate`.
 */
typedef enum PcarrClass {
  PCARR_CLASS_CONNECTED = 0,
  PCARR_CLASS_CONNECTED_DIGON_FREE = 1,
  PCARR_CLASS_CONNECTED_CYLINDRICAL = 2,
  PCARR_CLASS_INTERSECTING = 3,
  PCARR_CLASS_INTERSECTING_DIGON_FREE = 4,
  PCARR_CLASS_INTERSECTING_CYLINDRICAL = 5,
  PCARR_CLASS_GREAT = 6,
} PcarrClass;

typedef enum PcarrStatus {
  PCARR_STATUS_OK = 0,
  PCARR_STATUS_NULL_POINTER = 1,
  PCARR_STATUS_INVALID_STRING = 2,
  PCARR_STATUS_PARSE = 3,
  PCARR_STATUS_PRECONDITION = 4,
  PCARR_STATUS_MISMATCH = 5,
  PCARR_STATUS_BUDGET_EXCEEDED = 6,
  PCARR_STATUS_UNSUPPORTED = 7,
  PCARR_STATUS_OUT_OF_RANGE = 8,
  PCARR_STATUS_PANIC = 9,
} PcarrStatus;

/**
 * Verified integer circle realization of a code.
 */
typedef struct PcarrCertificate PcarrCertificate;

/**
 * Canonical code of an arrangement.
 */
typedef struct PcarrCode PcarrCode;

/**
 * Sorted list of canonical codes.
 */
typedef struct PcarrCodeList PcarrCodeList;

typedef struct PcarrFlags {
  bool connected;
  bool intersecting;
  bool digon_free;
  bool cylindrical;
  bool great;
  size_t num_circles;
  size_t num_crossings;
  /**
   * Order of the automorphism group, reflections included.
   */
  size_t symmetry;
  size_t triangles;
  size_t digons;
} PcarrFlags;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *pcarr_last_error(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void pcarr_string_free(char *s);

/**
 * Parses the text form of a canonical code.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum PcarrStatus pcarr_code_parse(const char *text, struct PcarrCode **out);

/**
 * # Safety
 * `code` must come from this library or be null.
 */
void pcarr_code_free(struct PcarrCode *code);

/**
 * Text form of a code; release it with `pcarr_string_free`.
 *
 * # Safety
 * `code` must be a live handle; `out` must be writable.
 */
enum PcarrStatus pcarr_code_to_string(const struct PcarrCode *code, char **out);

/**
 * Whether two codes describe isomorphic arrangements.
 *
 * # Safety
 * Both handles must be live or null; null compares unequal.
 */
bool pcarr_code_equal(const struct PcarrCode *a, const struct PcarrCode *b);

/**
 * Structural properties of the arrangement behind a code.
 *
 * # Safety
 * `code` must be a live handle; `out` must be writable.
 */
enum PcarrStatus pcarr_code_flags(const struct PcarrCode *code, struct PcarrFlags *out);

/**
 * Whether every triangle is bounded by a NonKrupp triple. Fails with
 * `PCARR_STATUS_PRECONDITION` if the arrangement has digons.
 *
 * # Safety
 * `code` must be a live handle; `out` must be writable.
 */
enum PcarrStatus pcarr_filter_nonkrupp_triangles(const struct PcarrCode *code, bool *out);

/**
 * Whether every triangle is bounded by a Krupp triple. Fails with
 * `PCARR_STATUS_PRECONDITION` unless the arrangement is intersecting and
 * not great.
 *
 * # Safety
 * `code` must be a live handle; `out` must be writable.
 */
enum PcarrStatus pcarr_filter_krupp_triangles(const struct PcarrCode *code, bool *out);

/**
 * All arrangements of `n` pseudocircles in a class, sorted by code.
 * `class_` is a `PcarrClass` value.
 *
 * # Safety
 * `out` must be writable.
 */
enum PcarrStatus pcarr_enumerate(size_t n,
                                 uint32_t class_,
                                 bool long_run,
                                 struct PcarrCodeList **out);

/**
 * # Safety
 * `list` must be a live handle or null.
 */
size_t pcarr_code_list_len(const struct PcarrCodeList *list);

/**
 * A new handle for the `i`-th code of a list.
 *
 * # Safety
 * `list` must be a live handle; `out` must be writable.
 */
enum PcarrStatus pcarr_code_list_get(const struct PcarrCodeList *list,
                                     size_t i,
                                     struct PcarrCode **out);

/**
 * # Safety
 * `list` must come from this library or be null.
 */
void pcarr_code_list_free(struct PcarrCodeList *list);

/**
 * Certificate for whatever the scene realizes. `params` holds
 * `num_circles` triples `x, y, r`.
 *
 * # Safety
 * `params` must point to `3 * num_circles` integers; `out` must be writable.
 */
enum PcarrStatus pcarr_certificate_from_scene(const int64_t *params,
                                              size_t num_circles,
                                              struct PcarrCertificate **out);

/**
 * Certificate that the scene realizes `code`; fails with
 * `PCARR_STATUS_MISMATCH` if it realizes something else.
 *
 * # Safety
 * As for `pcarr_certificate_from_scene`; `code` must be a live handle.
 */
enum PcarrStatus pcarr_certificate_new(const struct PcarrCode *code,
                                       const int64_t *params,
                                       size_t num_circles,
                                       struct PcarrCertificate **out);

/**
 * # Safety
 * `cert` must come from this library or be null.
 */
void pcarr_certificate_free(struct PcarrCertificate *cert);

/**
 * # Safety
 * `cert` must be a live handle; `out` must be writable.
 */
enum PcarrStatus pcarr_certificate_code(const struct PcarrCertificate *cert,
                                        struct PcarrCode **out);

/**
 * # Safety
 * `cert` must be a live handle or null.
 */
size_t pcarr_certificate_num_circles(const struct PcarrCertificate *cert);

/**
 * Writes `x, y, r` of circle `i` to `out[0..3]`.
 *
 * # Safety
 * `cert` must be a live handle; `out` must have room for three integers.
 */
enum PcarrStatus pcarr_certificate_circle(const struct PcarrCertificate *cert,
                                          size_t i,
                                          int64_t *out);

/**
 * SVG drawing of a certificate; release it with `pcarr_string_free`.
 *
 * # Safety
 * `cert` must be a live handle; `out` must be writable.
 */
enum PcarrStatus pcarr_certificate_svg(const struct PcarrCertificate *cert, char **out);

/**
 * Random search for a certificate of `code` with parameters in `1..=k`,
 * minimized on success. Fails with `PCARR_STATUS_BUDGET_EXCEEDED` if
 * `max_samples` scenes or `max_seconds` pass without a hit.
 *
 * # Safety
 * `code` must be a live handle; `out` must be writable.
 */
enum PcarrStatus pcarr_realize(const struct PcarrCode *code,
                               int64_t k,
                               size_t max_samples,
                               double max_seconds,
                               uint64_t seed,
                               struct PcarrCertificate **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PCARR_H */
