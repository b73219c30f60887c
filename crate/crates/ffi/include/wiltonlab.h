#ifndef WILTONLAB_H
#define WILTONLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WlStatus {
  WL_STATUS_OK = 0,
  WL_STATUS_NULL_POINTER = 1,
  WL_STATUS_INVALID_UTF8 = 2,
  /**
   * Arguments outside the domain (poles, excluded points, bad names).
   */
  WL_STATUS_DOMAIN = 3,
  /**
   * A numerical method failed to reach its tolerance.
   */
  WL_STATUS_NUMERIC = 4,
  WL_STATUS_INVALID_ARGUMENT = 5,
  WL_STATUS_PANIC = 6,
} WlStatus;

typedef enum WlMode {
  WL_MODE_CLASSICAL = 0,
  WL_MODE_REGULARIZED = 1,
  WL_MODE_MELLIN_BARNES = 2,
  WL_MODE_TAIL = 3,
} WlMode;

typedef enum WlVerdict {
  WL_VERDICT_CONVERGED = 0,
  WL_VERDICT_CONDITIONAL = 1,
  WL_VERDICT_DIVERGENT_SUSPECTED = 2,
} WlVerdict;

/**
 * A registered Hecke instance prepared for identity evaluation.
 */
typedef struct WlInstance WlInstance;

/**
 * An identity report.
 */
typedef struct WlReport WlReport;

typedef struct WlComplex {
  double re;
  double im;
} WlComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *wl_version(void);

/**
 * Message of the last failed call on this thread, or NULL. The pointer
 * stays valid until the next call into the library from this thread.
 */
const char *wl_last_error_message(void);

/**
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum WlStatus wl_instance_new(const char *name, struct WlInstance **out);

/**
 * # Safety
 * `inst` must come from [`wl_instance_new`] and not be freed already.
 * NULL is accepted.
 */
void wl_instance_free(struct WlInstance *inst);

/**
 * Weight k, scale λ of the instance (theorem variables).
 *
 * # Safety
 * `inst` must be a live handle; `k` and `lambda` writable or NULL.
 */
enum WlStatus wl_instance_signature(const struct WlInstance *inst, double *k, double *lambda);

/**
 * φ(s) in theorem variables.
 *
 * # Safety
 * `inst` must be a live handle; `out` writable.
 */
enum WlStatus wl_instance_phi(const struct WlInstance *inst,
                              struct WlComplex s,
                              struct WlComplex *out);

/**
 * The Bessel moment M_n(u) (theorem index n, theorem variable u).
 *
 * # Safety
 * `inst` must be a live handle; `out` writable.
 */
enum WlStatus wl_moment(const struct WlInstance *inst,
                        uint64_t n,
                        struct WlComplex u,
                        enum WlMode mode,
                        struct WlComplex *out);

/**
 * Both sides of the identity at corollary variables (u, v) with N terms
 * and automatic summation strategy.
 *
 * # Safety
 * `inst` must be a live handle; `out` writable. The report must be
 * released with [`wl_report_free`].
 */
enum WlStatus wl_evaluate_identity(const struct WlInstance *inst,
                                   struct WlComplex u,
                                   struct WlComplex v,
                                   enum WlMode mode,
                                   size_t terms,
                                   struct WlReport **out);

/**
 * Wilton's classical formula for ζ(u)ζ(v) with N terms.
 *
 * # Safety
 * `out` must be writable.
 */
enum WlStatus wl_wilton_classic(struct WlComplex u,
                                struct WlComplex v,
                                size_t terms,
                                struct WlReport **out);

/**
 * # Safety
 * `rep` must come from this library and not be freed already. NULL is
 * accepted.
 */
void wl_report_free(struct WlReport *rep);

/**
 * |lhs − rhs|/(1 + |lhs|), or NaN for a NULL report.
 *
 * # Safety
 * `rep` must be a live report or NULL.
 */
double wl_report_residual(const struct WlReport *rep);

/**
 * # Safety
 * `rep` must be a live report; `lhs` and `rhs` writable or NULL.
 */
enum WlStatus wl_report_sides(const struct WlReport *rep,
                              struct WlComplex *lhs,
                              struct WlComplex *rhs);

/**
 * # Safety
 * `rep` must be a live report; `out` writable.
 */
enum WlStatus wl_report_verdict(const struct WlReport *rep, enum WlVerdict *out);

/**
 * The report as JSON (same rendering as the CLI's `results` field).
 * Free the string with [`wl_string_free`].
 *
 * # Safety
 * `rep` must be a live report; `out` writable.
 */
enum WlStatus wl_report_json(const struct WlReport *rep, char **out);

/**
 * # Safety
 * `s` must come from this library and not be freed already. NULL is
 * accepted.
 */
void wl_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WILTONLAB_H */
