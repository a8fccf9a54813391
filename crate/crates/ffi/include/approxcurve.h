/* C interface for the approxcurve pipeline.
 * Strings returned by these functions are heap-allocated; release them with
 * ac_string_free. Handles are opaque; release them with the matching
 * ac_*_free. Generated by cbindgen from crates/ffi/src/lib.rs. */

#ifndef APPROXCURVE_H
#define APPROXCURVE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Outcome of a fallible call. `NotRational` is a verdict, not a failure:
// the curve was processed and found outside the rational class at the
// requested tolerance.
typedef enum AcStatus {
  AcStatus_Ok = 0,
  AcStatus_Error = 1,
  AcStatus_NotRational = 2,
} AcStatus;

// Opaque handle to the singular-structure report of one curve at one
// tolerance: strata, clusters, genus deficiency, rationality verdict.
typedef struct AcAnalysis AcAnalysis;

// Opaque handle to a parsed curve.
typedef struct AcCurve AcCurve;

// Opaque handle to an approximate rational parametrization.
typedef struct AcParam AcParam;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on the calling thread, empty when no
// failure has occurred. The pointer stays valid until the next failing call
// on the same thread; do not free it.
const char *ac_last_error_message(void);

// Releases a string returned by this library. NULL is accepted.
//
// # Safety
// `s` must be NULL or a pointer previously returned by a function of this
// library that documents `ac_string_free` as its deallocator.
void ac_string_free(char *s);

// Parses polynomial text (for example `x^3*y + x*y^3 - 2.5*x + 1`) into a
// curve handle written to `out`. Release the handle with `ac_curve_free`.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be a valid pointer.
enum AcStatus ac_curve_parse(const char *text, struct AcCurve **out);

// Releases a curve handle. NULL is accepted.
//
// # Safety
// `curve` must be NULL or a live handle from `ac_curve_parse`.
void ac_curve_free(struct AcCurve *curve);

// Total degree of the curve; -1 for a null handle or the zero polynomial.
//
// # Safety
// `curve` must be NULL or a live handle from `ac_curve_parse`.
int32_t ac_curve_degree(const struct AcCurve *curve);

// Canonical text form of the curve, or NULL for a null handle. Free the
// result with `ac_string_free`.
//
// # Safety
// `curve` must be NULL or a live handle from `ac_curve_parse`.
char *ac_curve_text(const struct AcCurve *curve);

// Detects the singular structure of `curve` at tolerance `eps` and writes
// an analysis handle to `out`. A curve that fails the rationality test
// still analyzes with status `Ok`; query the verdict with
// `ac_analysis_rational`. Release the handle with `ac_analysis_free`.
//
// # Safety
// `curve` must be a live handle; `out` must be a valid pointer.
enum AcStatus ac_analyze(const struct AcCurve *curve, double eps, struct AcAnalysis **out);

// Releases an analysis handle. NULL is accepted.
//
// # Safety
// `analysis` must be NULL or a live handle from `ac_analyze`.
void ac_analysis_free(struct AcAnalysis *analysis);

// Full analysis report as pretty-printed JSON (keys `strata`, `clusters`,
// `genus_deficiency`, `eps_rational`), or NULL for a null handle. Free the
// result with `ac_string_free`.
//
// # Safety
// `analysis` must be NULL or a live handle from `ac_analyze`.
char *ac_analysis_json(const struct AcAnalysis *analysis);

// Rationality verdict: 1 when the curve passed the test, 0 when it failed,
// -1 for a null handle.
//
// # Safety
// `analysis` must be NULL or a live handle from `ac_analyze`.
int32_t ac_analysis_rational(const struct AcAnalysis *analysis);

// Genus deficiency of the analyzed curve; zero means rational. Returns the
// minimum i64 for a null handle, a value no real deficiency takes.
//
// # Safety
// `analysis` must be NULL or a live handle from `ac_analyze`.
int64_t ac_analysis_deficiency(const struct AcAnalysis *analysis);

// Number of singular clusters found; -1 for a null handle.
//
// # Safety
// `analysis` must be NULL or a live handle from `ac_analyze`.
int64_t ac_analysis_cluster_count(const struct AcAnalysis *analysis);

// Computes the approximate rational parametrization of `curve` at
// tolerance `eps` and writes a handle to `out`. `seed` drives the
// randomized choices; equal seeds reproduce the run. Returns `NotRational`
// when the curve fails the rationality test. Release the handle with
// `ac_param_free`.
//
// # Safety
// `curve` must be a live handle; `out` must be a valid pointer.
enum AcStatus ac_parametrize(const struct AcCurve *curve,
                             double eps,
                             uint64_t seed,
                             struct AcParam **out);

// Releases a parametrization handle. NULL is accepted.
//
// # Safety
// `param` must be NULL or a live handle from `ac_parametrize`.
void ac_param_free(struct AcParam *param);

// Common degree of the numerators and denominator; -1 for a null handle.
//
// # Safety
// `param` must be NULL or a live handle from `ac_parametrize`.
int32_t ac_param_degree(const struct AcParam *param);

// Parametrization report as pretty-printed JSON (coefficient lists `p1`,
// `p2`, `q` and the run diagnostics), or NULL for a null handle. Free the
// result with `ac_string_free`.
//
// # Safety
// `param` must be NULL or a live handle from `ac_parametrize`.
char *ac_param_json(const struct AcParam *param);

// Expands the parametrization back into an implicit polynomial and writes
// its text form to `out_text`. Free the string with `ac_string_free`.
//
// # Safety
// `param` must be a live handle; `out_text` must be a valid pointer.
enum AcStatus ac_implicitize(const struct AcParam *param, char **out_text);

// Empirical distance from curve `f` to curve `c`: samples `f` on 2n random
// integer lines in [a, b], measures each sample's distance to `c` over `r`
// directions, and writes summary JSON (keys `mu`, `rho`, `lo`, `hi`,
// `n_samples`) to `out_json`. Free the string with `ac_string_free`.
//
// # Safety
// `f` and `c` must be live handles; `out_json` must be a valid pointer.
enum AcStatus ac_distance(const struct AcCurve *f,
                          const struct AcCurve *c,
                          int64_t a,
                          int64_t b,
                          size_t n,
                          uint32_t r,
                          uint64_t seed,
                          char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* APPROXCURVE_H */
