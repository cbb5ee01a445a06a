#ifndef TAKIFF_H
#define TAKIFF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes of the C interface.
typedef enum TakiffStatus {
  TAKIFF_STATUS_OK = 0,
  // A required pointer argument was null.
  TAKIFF_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  TAKIFF_STATUS_INVALID_UTF8 = 2,
  // An argument could not be parsed or has the wrong shape.
  TAKIFF_STATUS_INVALID_INPUT = 3,
  // The computation itself failed.
  TAKIFF_STATUS_COMPUTATION_FAILED = 4,
  // Reading or writing the KL cache file failed.
  TAKIFF_STATUS_CACHE_ERROR = 5,
  // The library panicked; the context should be discarded.
  TAKIFF_STATUS_PANIC = 6,
} TakiffStatus;

// Opaque handle: a root system plus partition and KL caches.
typedef struct TakiffContext TakiffContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates a context for a Cartan type such as `"A2"` or `"B2xA1+T1"`.
// `cache_path` may be null for an in-memory KL cache.
//
// # Safety
// String arguments must be null or NUL-terminated; `out` must be writable.
enum TakiffStatus takiff_context_new(const char *cartan_type,
                                     const char *cache_path,
                                     struct TakiffContext **out);

// Releases a context. Null is ignored.
//
// # Safety
// `ctx` must be null or come from [`takiff_context_new`], and not be used
// afterwards.
void takiff_context_free(struct TakiffContext *ctx);

// Rank of the semisimple part of the context's root system.
//
// # Safety
// `ctx` must be a live context; `out` must be writable.
enum TakiffStatus takiff_rank(const struct TakiffContext *ctx, size_t *out);

// Kostant's partition function at `chi`, given as comma-separated
// simple-root coordinates (e.g. `"-1,-1"`).
//
// # Safety
// `ctx` must be a live context, `chi` NUL-terminated, `out` writable.
enum TakiffStatus takiff_partition(const struct TakiffContext *ctx, const char *chi, uint64_t *out);

// The multiplicity `[M(lambda, mu) : L(lambda2, mu2)]`. Weights are
// comma-separated rationals, central coordinates after a `;`.
//
// # Safety
// `ctx` must be a live context, strings NUL-terminated, `out` writable.
enum TakiffStatus takiff_mult(const struct TakiffContext *ctx,
                              const char *lambda,
                              const char *mu,
                              const char *lambda2,
                              const char *mu2,
                              uint64_t *out);

// As [`takiff_mult`], returning the full report as JSON.
//
// # Safety
// As [`takiff_mult`]; free the result with [`takiff_string_free`].
enum TakiffStatus takiff_mult_report_json(const struct TakiffContext *ctx,
                                          const char *lambda,
                                          const char *mu,
                                          const char *lambda2,
                                          const char *mu2,
                                          char **out);

// Nonzero multiplicities in `M(lambda, mu)` down to `height`, as JSON.
//
// # Safety
// `ctx` must be a live context, strings NUL-terminated, `out` writable;
// free the result with [`takiff_string_free`].
enum TakiffStatus takiff_series_json(const struct TakiffContext *ctx,
                                     const char *lambda,
                                     const char *mu,
                                     uint32_t height,
                                     char **out);

// The minimal Weyl element making the centraliser of `mu` standard, with
// `w(mu)` and the Levi, as JSON.
//
// # Safety
// `ctx` must be a live context, `mu` NUL-terminated, `out` writable; free
// the result with [`takiff_string_free`].
enum TakiffStatus takiff_reduce_json(const struct TakiffContext *ctx, const char *mu, char **out);

// The Kazhdan–Lusztig polynomial `P_{x,w}` rendered as text, e.g. `"1 + q"`.
// Words use 1-based letters (`"2132"`, `"e"`).
//
// # Safety
// `ctx` must be a live context, words NUL-terminated, `out` writable; free
// the result with [`takiff_string_free`].
enum TakiffStatus takiff_kl_polynomial(const struct TakiffContext *ctx,
                                       const char *x,
                                       const char *w,
                                       char **out);

// Appends newly computed KL records to the context's cache file, if any.
//
// # Safety
// `ctx` must be a live context.
enum TakiffStatus takiff_flush_cache(const struct TakiffContext *ctx);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string from this library not yet freed.
void takiff_string_free(char *s);

// Description of the last failure on this thread, or null. Valid until the
// next library call on the same thread.
const char *takiff_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TAKIFF_H */
