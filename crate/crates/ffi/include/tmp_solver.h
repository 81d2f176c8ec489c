/* C interface of the train marshalling solver. */

#ifndef TMP_SOLVER_H
#define TMP_SOLVER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of a fallible call.
 */
typedef enum TmpStatus {
  /**
   * Success.
   */
  TMP_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  TMP_STATUS_NULL_ARGUMENT = 1,
  /**
   * The input text is not valid UTF-8.
   */
  TMP_STATUS_INVALID_UTF8 = 2,
  /**
   * The instance description failed to parse or validate.
   */
  TMP_STATUS_INVALID_INSTANCE = 3,
  /**
   * The oracle refused: too many destinations for exhaustive search.
   */
  TMP_STATUS_ORACLE_LIMIT = 4,
} TmpStatus;

/**
 * Solver selection for [`tmp_solve`].
 */
typedef enum TmpMethod {
  /**
   * Bottom-up dynamic program.
   */
  TMP_METHOD_BOTTOM_UP = 0,
  /**
   * Memoized top-down dynamic program.
   */
  TMP_METHOD_MEMOIZED = 1,
  /**
   * Brute-force search over all block orders (small instances only).
   */
  TMP_METHOD_ORACLE = 2,
} TmpMethod;

/**
 * Opaque handle to a validated instance.
 */
typedef struct TmpInstance TmpInstance;

/**
 * Opaque handle to a solved instance.
 */
typedef struct TmpSolution TmpSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Diagnostic for the most recent failure on this thread, or null if no
 * failure has occurred. The pointer stays valid until the next failing
 * call on the same thread.
 */
const char *tmp_last_error_message(void);

/**
 * Parses an instance from NUL-terminated text in the plain instance file
 * format and stores a handle in `*out`.
 *
 * # Safety
 * `text` must point to a NUL-terminated byte string and `out` to writable
 * memory for one pointer.
 */
enum TmpStatus tmp_instance_parse(const char *text, struct TmpInstance **out);

/**
 * Builds an instance from `n` per-railcar destination labels in `1..=t`
 * and stores a handle in `*out`.
 *
 * # Safety
 * `labels` must point to `n` readable `uint32_t` values and `out` to
 * writable memory for one pointer.
 */
enum TmpStatus tmp_instance_from_destinations(uint32_t t,
                                              const uint32_t *labels,
                                              size_t n,
                                              struct TmpInstance **out);

/**
 * Releases an instance handle. Null is ignored.
 *
 * # Safety
 * `inst` must be null or a pointer returned by a `tmp_instance_*`
 * constructor that has not been freed yet.
 */
void tmp_instance_free(struct TmpInstance *inst);

/**
 * Number of railcars, or 0 on a null handle.
 *
 * # Safety
 * `inst` must be null or a live instance handle.
 */
uint32_t tmp_instance_car_count(const struct TmpInstance *inst);

/**
 * Number of destinations, or 0 on a null handle.
 *
 * # Safety
 * `inst` must be null or a live instance handle.
 */
uint32_t tmp_instance_destination_count(const struct TmpInstance *inst);

/**
 * A-priori upper bound `min(t, ceil(n/4 + 1/2))` on the optimal track
 * count, or 0 on a null handle.
 *
 * # Safety
 * `inst` must be null or a live instance handle.
 */
uint32_t tmp_instance_upper_bound(const struct TmpInstance *inst);

/**
 * Solves an instance and stores a solution handle in `*out`.
 *
 * With `apply_shrink` the optimum-preserving run-collapsing preprocessing
 * runs first; the solution is still reported in the original railcar
 * numbering. [`TmpMethod::Oracle`] refuses instances with more than 8
 * destinations.
 *
 * # Safety
 * `inst` must be a live instance handle, `out` writable memory for one
 * pointer, and `method` a declared enumerator.
 */
enum TmpStatus tmp_solve(const struct TmpInstance *inst,
                         enum TmpMethod method,
                         bool apply_shrink,
                         struct TmpSolution **out);

/**
 * Minimum number of classification tracks, or 0 on a null handle.
 *
 * # Safety
 * `sol` must be null or a live solution handle.
 */
uint32_t tmp_solution_k_opt(const struct TmpSolution *sol);

/**
 * Copies the optimal block order (1-based destination labels) into `buf`
 * and returns the full order length `t`. At most `cap` labels are written;
 * call with `cap = 0` to query the length.
 *
 * # Safety
 * `sol` must be a live solution handle and `buf` must point to `cap`
 * writable `uint32_t` values (it may be null when `cap` is 0).
 */
size_t tmp_solution_order(const struct TmpSolution *sol, uint32_t *buf, size_t cap);

/**
 * Copies the per-railcar track assignment (1-based tracks, original railcar
 * numbering) into `buf` and returns the full length `n`. At most `cap`
 * entries are written; call with `cap = 0` to query the length.
 *
 * # Safety
 * `sol` must be a live solution handle and `buf` must point to `cap`
 * writable `uint32_t` values (it may be null when `cap` is 0).
 */
size_t tmp_solution_tracks(const struct TmpSolution *sol, uint32_t *buf, size_t cap);

/**
 * Releases a solution handle. Null is ignored.
 *
 * # Safety
 * `sol` must be null or a pointer returned by [`tmp_solve`] that has not
 * been freed yet.
 */
void tmp_solution_free(struct TmpSolution *sol);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TMP_SOLVER_H */
