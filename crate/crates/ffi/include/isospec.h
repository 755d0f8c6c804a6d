#ifndef ISOSPEC_H
#define ISOSPEC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum IsospecStatus {
  ISOSPEC_STATUS_OK = 0,
  ISOSPEC_STATUS_NULL_POINTER = 1,
  ISOSPEC_STATUS_INVALID_UTF8 = 2,
  ISOSPEC_STATUS_INVALID_INPUT = 3,
  /**
   * The computation ran and at least one check failed.
   */
  ISOSPEC_STATUS_CHECK_FAILED = 4,
  ISOSPEC_STATUS_PANIC = 5,
} IsospecStatus;

/**
 * Opaque polynomial with rational coefficients.
 */
typedef struct IsospecPoly IsospecPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next call into the library from the same thread.
 */
const char *isospec_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void isospec_string_free(char *s);

/**
 * Parses a polynomial; its variables are the identifiers that occur in
 * `text`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum IsospecStatus isospec_poly_parse(const char *text, struct IsospecPoly **out);

/**
 * # Safety
 * `p` must be null or a handle from this library, freed once.
 */
void isospec_poly_free(struct IsospecPoly *p);

/**
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum IsospecStatus isospec_poly_to_string(const struct IsospecPoly *p, char **out);

/**
 * 1 if the polynomial is zero, 0 otherwise, -1 on a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
int isospec_poly_is_zero(const struct IsospecPoly *p);

/**
 * Sum in the union of both variable sets.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum IsospecStatus isospec_poly_add(const struct IsospecPoly *a,
                                    const struct IsospecPoly *b,
                                    struct IsospecPoly **out);

/**
 * # Safety
 * As for [`isospec_poly_add`].
 */
enum IsospecStatus isospec_poly_sub(const struct IsospecPoly *a,
                                    const struct IsospecPoly *b,
                                    struct IsospecPoly **out);

/**
 * # Safety
 * As for [`isospec_poly_add`].
 */
enum IsospecStatus isospec_poly_mul(const struct IsospecPoly *a,
                                    const struct IsospecPoly *b,
                                    struct IsospecPoly **out);

/**
 * 1 if equal after embedding both in a common context, 0 if not, -1 on a
 * null handle.
 *
 * # Safety
 * `a`, `b` must be null or live handles.
 */
int isospec_poly_equal(const struct IsospecPoly *a, const struct IsospecPoly *b);

/**
 * Isogeny report for two traceless fields given as "a,b,c" or "a,b,c,d",
 * as line-delimited JSON records.
 *
 * # Safety
 * `phi1`, `phi2` must be NUL-terminated strings and `out` a valid pointer.
 */
enum IsospecStatus isospec_isogeny(const char *phi1, const char *phi2, char **out);

/**
 * Strata rows as line-delimited JSON. `group` is "sl4" or "so4"; `dprime`
 * only affects SO(4).
 *
 * # Safety
 * `group` must be a NUL-terminated string and `out` a valid pointer.
 */
enum IsospecStatus isospec_strata(const char *group, uint32_t genus, int64_t dprime, char **out);

/**
 * Runs a verification suite ("all", "ring", "matrix", "geometry",
 * "numerology") and writes the line-delimited JSON report.
 *
 * # Safety
 * `suite` must be a NUL-terminated string and `out` a valid pointer.
 */
enum IsospecStatus isospec_verify(const char *suite,
                                  uint32_t genus,
                                  uint32_t trunc,
                                  uint64_t seed,
                                  char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ISOSPEC_H */
