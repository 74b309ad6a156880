/* C interface of the steiner-surfaces library. */

#pragma once

/* Generated with cbindgen:0.26.0 */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum SsStatus {
  SS_STATUS_OK = 0,
  SS_STATUS_NULL_POINTER = 1,
  SS_STATUS_INVALID_UTF8 = 2,
  SS_STATUS_PARSE_ERROR = 3,
  SS_STATUS_INVALID_GEOMETRY = 4,
  SS_STATUS_INVALID_POINT = 5,
  SS_STATUS_INVALID_ARGUMENT = 6,
  SS_STATUS_UNSUPPORTED = 7,
  SS_STATUS_CAP_EXCEEDED = 8,
  SS_STATUS_INTERNAL = 9,
} SsStatus;

/**
 * Opaque terminal configuration handle.
 */
typedef struct SsConfig SsConfig;

/**
 * Opaque surface description handle.
 */
typedef struct SsGeometry SsGeometry;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread, or null. The
 * caller owns the returned string and releases it with
 * [`ss_string_free`].
 */
char *ss_last_error_message(void);

/**
 * Release a string obtained from this library.
 *
 * # Safety
 * `s` must be null or a pointer previously returned by
 * [`ss_last_error_message`], not yet freed.
 */
void ss_string_free(char *s);

/**
 * Parse a geometry description: `plane`, `disk`, `sphere`,
 * `torus:ax,ay;bx,by`, `klein:w,h` or `projective`.
 *
 * # Safety
 * `spec` must be a valid NUL-terminated string and `out` a valid
 * location for one pointer.
 */
enum SsStatus ss_geometry_parse(const char *spec, struct SsGeometry **out);

/**
 * Number of chart coordinates per point of this geometry (2 or 3).
 *
 * # Safety
 * `geometry` must be a live handle from [`ss_geometry_parse`].
 */
uintptr_t ss_geometry_chart_dim(const struct SsGeometry *geometry);

/**
 * Release a geometry handle (null is a no-op).
 *
 * # Safety
 * `geometry` must be null or a live handle, not yet freed.
 */
void ss_geometry_free(struct SsGeometry *geometry);

/**
 * Geodesic distance between two points given as chart coordinate
 * buffers of length `ss_geometry_chart_dim(geometry)`.
 *
 * # Safety
 * All pointers must be valid; `p` and `q` must hold at least the chart
 * dimension of `geometry` in doubles.
 */
enum SsStatus ss_distance(const struct SsGeometry *geometry,
                          const double *p,
                          const double *q,
                          double *out);

/**
 * Build a configuration from a flat coordinate buffer
 * (`n_points * chart_dim` doubles, point by point).
 *
 * # Safety
 * `geometry` must be live, `coords` must hold the full buffer, `out`
 * must be a valid location for one pointer.
 */
enum SsStatus ss_config_new(const struct SsGeometry *geometry,
                            const double *coords,
                            uintptr_t n_points,
                            struct SsConfig **out);

/**
 * Parse the text point-file format: a geometry line, then one point per
 * line as comma-separated chart coordinates.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid
 * location for one pointer.
 */
enum SsStatus ss_config_parse(const char *text, struct SsConfig **out);

/**
 * Number of terminals of a configuration.
 *
 * # Safety
 * `config` must be a live handle.
 */
uintptr_t ss_config_terminal_count(const struct SsConfig *config);

/**
 * Release a configuration handle (null is a no-op).
 *
 * # Safety
 * `config` must be null or a live handle, not yet freed.
 */
void ss_config_free(struct SsConfig *config);

/**
 * Minimal spanning tree weight of the configuration.
 *
 * # Safety
 * `config` must be live and `out` a valid double location.
 */
enum SsStatus ss_mst_weight(const struct SsConfig *config, double *out);

/**
 * Certified Steiner tree upper bound of the configuration (at most 6
 * terminals). Deterministic given the seed.
 *
 * # Safety
 * `config` must be live and `out` a valid double location.
 */
enum SsStatus ss_smt_upper_weight(const struct SsConfig *config, uint64_t seed, double *out);

/**
 * Steiner ratio data of the configuration (2..=6 terminals): spanning
 * weight, Steiner upper bound and their quotient. Any output pointer
 * may be null to skip that value.
 *
 * # Safety
 * `config` must be live; non-null outputs must be valid double
 * locations.
 */
enum SsStatus ss_ratio(const struct SsConfig *config,
                       uint64_t seed,
                       double *mst_out,
                       double *smt_out,
                       double *ratio_out);

/**
 * Ratio curve value `m(r)` of the regular hyperbolic triangle with
 * circumradius `r > 0`.
 *
 * # Safety
 * `out` must be a valid double location.
 */
enum SsStatus ss_hyperbolic_m(double r, double *out);

/**
 * Difference between `m(r)` and its second-order expansion at zero, for
 * `0 < r <= 1/2`.
 *
 * # Safety
 * `out` must be a valid double location.
 */
enum SsStatus ss_taylor_residual(double r, double *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus
