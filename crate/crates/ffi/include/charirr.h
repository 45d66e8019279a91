#ifndef CHARIRR_H
#define CHARIRR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes.
 */
typedef enum CharirrStatus {
  CHARIRR_STATUS_OK = 0,
  CHARIRR_STATUS_NULL_POINTER = 1,
  CHARIRR_STATUS_INVALID_UTF8 = 2,
  CHARIRR_STATUS_INVALID_ARGUMENT = 3,
  /*
   A configured size or degree cap was exceeded.
   */
  CHARIRR_STATUS_CAP_EXCEEDED = 4,
  /*
   The computation failed (for example an exact division left a remainder).
   */
  CHARIRR_STATUS_COMPUTATION_FAILED = 5,
  CHARIRR_STATUS_PANIC = 6,
} CharirrStatus;

/*
 Opaque root system handle.
 */
typedef struct CharirrRootSystem CharirrRootSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or null. Valid until the
 next call into the library from the same thread.
 */
const char *charirr_last_error(void);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and must not be used afterwards.
 */
void charirr_string_free(char *s);

/*
 Builds a root system from a name such as `"A2"` or `"G2"`.

 # Safety
 `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CharirrStatus charirr_rootsys_new(const char *name, struct CharirrRootSystem **out);

/*
 # Safety
 `rs` must come from `charirr_rootsys_new` and must not be used afterwards.
 */
void charirr_rootsys_free(struct CharirrRootSystem *rs);

/*
 # Safety
 `rs` must be a live handle and `out` a valid pointer.
 */
enum CharirrStatus charirr_rootsys_rank(const struct CharirrRootSystem *rs, size_t *out);

/*
 Order of the Weyl group.

 # Safety
 `rs` must be a live handle and `out` a valid pointer.
 */
enum CharirrStatus charirr_rootsys_weyl_order(const struct CharirrRootSystem *rs, size_t *out);

/*
 Character of the irreducible representation with highest weight `coords`
 as JSON: `{"rs", "highest_weight", "dimension", "terms"}`.

 # Safety
 `coords` must point to `len` integers; `out` must be a valid pointer.
 */
enum CharirrStatus charirr_character_json(const struct CharirrRootSystem *rs,
                                          const int64_t *coords,
                                          size_t len,
                                          char **out);

/*
 Alternating sum `S(λ)` as a JSON list of `{"coords", "coeff"}` terms.

 # Safety
 As for `charirr_character_json`.
 */
enum CharirrStatus charirr_schur_sum_json(const struct CharirrRootSystem *rs,
                                          const int64_t *coords,
                                          size_t len,
                                          char **out);

/*
 `D(λ)` and `C(λ)` with the gcd invariants as JSON.

 # Safety
 As for `charirr_character_json`.
 */
enum CharirrStatus charirr_clambda_json(const struct CharirrRootSystem *rs,
                                        const int64_t *coords,
                                        size_t len,
                                        char **out);

/*
 `C(λ)` with its full factor report as JSON. The polynomial uses ambient
 coordinates for type A and fundamental-weight coordinates otherwise.

 # Safety
 As for `charirr_character_json`.
 */
enum CharirrStatus charirr_cfactor_json(const struct CharirrRootSystem *rs,
                                        const int64_t *coords,
                                        size_t len,
                                        uint64_t seed,
                                        char **out);

/*
 Number of absolutely irreducible factors of `C(λ)`.

 # Safety
 `coords` must point to `len` integers; `out` must be a valid pointer.
 */
enum CharirrStatus charirr_absolute_factor_count(const struct CharirrRootSystem *rs,
                                                 const int64_t *coords,
                                                 size_t len,
                                                 uint64_t seed,
                                                 size_t *out);

/*
 Cyclotomic obstruction report for `(e, f, d)` as JSON.

 # Safety
 `out` must be a valid pointer.
 */
enum CharirrStatus charirr_cyclo_obstruct_json(uint64_t e,
                                               uint64_t f,
                                               uint64_t d,
                                               uint64_t cap,
                                               char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHARIRR_H */
