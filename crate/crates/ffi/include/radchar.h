#ifndef RADCHAR_H
#define RADCHAR_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RadcharClass {
  RADCHAR_CLASS_SYMMETRIC = 0,
  RADCHAR_CLASS_SKEW_SYMMETRIC = 1,
  RADCHAR_CLASS_SKEW_HERMITIAN = 2,
} RadcharClass;

typedef enum RadcharStatus {
  RADCHAR_STATUS_OK = 0,
  RADCHAR_STATUS_INVALID_ARGUMENT = 1,
  RADCHAR_STATUS_NULL_POINTER = 2,
  RADCHAR_STATUS_BUDGET_EXCEEDED = 3,
  RADCHAR_STATUS_MATH_ERROR = 4,
  RADCHAR_STATUS_PANIC = 5,
} RadcharStatus;

typedef enum RadcharType {
  RADCHAR_TYPE_C = 0,
  RADCHAR_TYPE_D = 1,
  RADCHAR_TYPE_U = 2,
} RadcharType;

typedef enum RadcharVariant {
  RADCHAR_VARIANT_CORRECTED = 0,
  RADCHAR_VARIANT_PRINTED = 1,
} RadcharVariant;

/**
 * A character-degree census table.
 */
typedef struct RadcharCensus RadcharCensus;

/**
 * A polynomial in `q` with integer coefficients.
 */
typedef struct RadcharPoly RadcharPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread. Valid until the next
 * failing call; never null.
 */
const char *radchar_last_error(void);

/**
 * # Safety
 * `s` must come from this library, or be null.
 */
void radchar_string_free(char *s);

/**
 * Builds the census table of `R_u^{kind,d}` in rank `n`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
enum RadcharStatus radchar_census_new(enum RadcharType kind,
                                      uint32_t n,
                                      uint32_t d,
                                      enum RadcharVariant var,
                                      struct RadcharCensus **out);

/**
 * # Safety
 * `c` must come from [`radchar_census_new`], or be null.
 */
void radchar_census_free(struct RadcharCensus *c);

/**
 * Number of rows; 0 for a null handle.
 *
 * # Safety
 * `c` must be a live handle or null.
 */
size_t radchar_census_len(const struct RadcharCensus *c);

/**
 * Whether `sum count * degree^2` equals the group order; -1 for null.
 *
 * # Safety
 * `c` must be a live handle or null.
 */
int32_t radchar_census_sum_of_squares_holds(const struct RadcharCensus *c);

/**
 * Rank `r` and exponent `e` of row `i`; the degree is `q^e` (C, D) or
 * `q^{2e}` (U).
 *
 * # Safety
 * `c` must be a live handle; `r` and `e` valid pointers.
 */
enum RadcharStatus radchar_census_row(const struct RadcharCensus *c,
                                      size_t i,
                                      uint32_t *r,
                                      uint32_t *e);

/**
 * Character count of row `i`, as a new polynomial handle.
 *
 * # Safety
 * `c` must be a live handle and `out` valid.
 */
enum RadcharStatus radchar_census_count(const struct RadcharCensus *c,
                                        size_t i,
                                        struct RadcharPoly **out);

/**
 * Character degree of row `i`, as a new polynomial handle.
 *
 * # Safety
 * `c` must be a live handle and `out` valid.
 */
enum RadcharStatus radchar_census_degree(const struct RadcharCensus *c,
                                         size_t i,
                                         struct RadcharPoly **out);

/**
 * The whole table as JSON.
 *
 * # Safety
 * `c` must be a live handle and `out` valid.
 */
enum RadcharStatus radchar_census_json(const struct RadcharCensus *c, char **out);

/**
 * Number of symmetric, skew-symmetric or skew-Hermitian `n x n` matrices of
 * rank `r`.
 *
 * # Safety
 * `out` must be valid.
 */
enum RadcharStatus radchar_rank_census(enum RadcharClass class_,
                                       uint32_t n,
                                       uint32_t r,
                                       enum RadcharVariant var,
                                       struct RadcharPoly **out);

/**
 * # Safety
 * `p` must come from this library, or be null.
 */
void radchar_poly_free(struct RadcharPoly *p);

/**
 * Degree of the polynomial, or -1 for zero or a null handle.
 *
 * # Safety
 * `p` must be a live handle or null.
 */
int64_t radchar_poly_degree(const struct RadcharPoly *p);

/**
 * Human-readable form such as `q^3 - q^2`.
 *
 * # Safety
 * `p` must be a live handle and `out` valid.
 */
enum RadcharStatus radchar_poly_to_string(const struct RadcharPoly *p, char **out);

/**
 * Coefficients, constant term first, as a JSON array of decimal strings.
 *
 * # Safety
 * `p` must be a live handle and `out` valid.
 */
enum RadcharStatus radchar_poly_coeffs_json(const struct RadcharPoly *p, char **out);

/**
 * Value at `q` as a decimal string (values can exceed 64 bits).
 *
 * # Safety
 * `p` must be a live handle and `out` valid.
 */
enum RadcharStatus radchar_poly_eval(const struct RadcharPoly *p, uint64_t q, char **out);

/**
 * Brute-force orbit census at `q` as JSON. `budget` 0 means the default.
 *
 * # Safety
 * `out` must be valid.
 */
enum RadcharStatus radchar_orbit_census_json(enum RadcharType kind,
                                             uint32_t n,
                                             uint32_t d,
                                             uint64_t q,
                                             uint64_t budget_limit,
                                             char **out);

/**
 * Number of conjugacy classes of the radical over `F_q`, by enumeration.
 * `budget` 0 means the default of 10^4 group elements.
 *
 * # Safety
 * `out` must be valid.
 */
enum RadcharStatus radchar_class_count(enum RadcharType kind,
                                       uint32_t n,
                                       uint32_t d,
                                       uint64_t q,
                                       uint64_t budget_limit,
                                       uint64_t *out);

/**
 * Library version as a static string.
 */
const char *radchar_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RADCHAR_H */
