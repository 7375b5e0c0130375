/* C interface to the qpot quasi-potential library. Generated by cbindgen. */

#ifndef QPOT_H
#define QPOT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Phase of a boundary pair, as reported by [`qpot_model_phase`].
typedef enum QpotPhase {
  QPOT_PHASE_INVALID = -1,
  QPOT_PHASE_LOW_DENSITY = 0,
  QPOT_PHASE_HIGH_DENSITY = 1,
  QPOT_PHASE_MAXIMAL_CURRENT = 2,
  QPOT_PHASE_COEXISTENCE = 3,
} QpotPhase;

// Result code of a fallible call.
typedef enum QpotStatus {
  // The call succeeded and any output arguments are filled in.
  QPOT_STATUS_OK = 0,
  // A required pointer argument was null.
  QPOT_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  QPOT_STATUS_UTF8 = 2,
  // The model descriptor was rejected.
  QPOT_STATUS_BAD_MODEL = 3,
  // A density buffer or field was rejected.
  QPOT_STATUS_BAD_FIELD = 4,
  // An index or buffer length does not match the handle.
  QPOT_STATUS_BAD_INDEX = 5,
  // The computation itself failed; see `qpot_last_error`.
  QPOT_STATUS_COMPUTE_FAILED = 6,
  // A file could not be read or written.
  QPOT_STATUS_IO = 7,
  // An internal panic was caught at the boundary.
  QPOT_STATUS_PANIC = 8,
} QpotStatus;

// A density field ρ(t, x) on the uniform cell grid over (0, 1).
typedef struct QpotField QpotField;

// A flux/entropy pair together with its boundary densities.
typedef struct QpotModel QpotModel;

// Shape of a constructed relaxation path.
typedef struct QpotPathInfo {
  // Evolution horizon actually used.
  double horizon;
  // Time the reverse jump spends inside the domain; +inf for a standing
  // jump, 0 when the jump merges immediately.
  double theta;
  // Position of the grown jump in path coordinates, NaN when the
  // construction grows none.
  double anchor;
} QpotPathInfo;

// Action of a field split into its interior and boundary parts.
typedef struct QpotAction {
  // Entropy produced against the field's own dynamics.
  double bulk;
  // Cost of the left boundary trace against the left datum.
  double left;
  // Cost of the right boundary trace against the right datum.
  double right;
  // bulk + left + right.
  double total;
  // Resolution floor of the estimate at this grid; differences smaller
  // than this are not meaningful.
  double floor;
} QpotAction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the most recent failure on the calling thread, or null
// when the most recent call succeeded.
//
// The pointer stays valid until the next `qpot_` call from the same thread.
const char *qpot_last_error(void);

// Library version as a static string.
const char *qpot_version(void);

// Size the worker pool used by parallel computations: `n` threads, or with
// `n = 0` the `QPOT_THREADS` environment variable, falling back to one
// thread per core. Only the first call in a process takes effect.
void qpot_init_threads(size_t n);

// Parse a JSON model descriptor into a fresh handle.
//
// The descriptor matches the CLI format:
// `{"flux": "asep" | {"cubic": a} | {"table": [[rho, f], ...]},`
// ` "entropy": "asep" | {"table": [[rho, h2], ...]} (optional),`
// ` "rho_l": x, "rho_r": y}`.
//
// # Safety
// `descriptor` must point to a NUL-terminated string and `out` to a valid
// location. On success `*out` owns the handle and must be released with
// [`qpot_model_free`].
enum QpotStatus qpot_model_new(const char *descriptor, struct QpotModel **out);

// Release a model handle. Null is ignored.
//
// # Safety
// `model` must be null or a pointer obtained from [`qpot_model_new`] that
// has not been freed yet.
void qpot_model_free(struct QpotModel *model);

// Phase of the model's boundary pair, or `Invalid` on a null handle.
//
// # Safety
// `model` must be null or a live handle from [`qpot_model_new`].
enum QpotPhase qpot_model_phase(const struct QpotModel *model);

// Maximal density K of the model, or NaN on a null handle.
//
// # Safety
// `model` must be null or a live handle from [`qpot_model_new`].
double qpot_model_capacity(const struct QpotModel *model);

// Quasi-potential of a density profile: the minimal action needed to reach
// it from the stationary state. `rho` holds `n` cell averages.
//
// # Safety
// `model` must be a live handle, `rho` must point to `n` readable doubles
// and `out` to a writable double.
enum QpotStatus qpot_static_value(const struct QpotModel *model,
                                  const double *rho,
                                  size_t n,
                                  double *out);

// Fill `out` with `n` cell averages of the stationary profile. On the
// coexistence line `anchor` selects the standing-jump position (NaN for
// 1/2); elsewhere it is ignored.
//
// # Safety
// `model` must be a live handle and `out` must point to `n` writable
// doubles.
enum QpotStatus qpot_stationary_profile(const struct QpotModel *model,
                                        double anchor,
                                        double *out,
                                        size_t n);

// Upper bound on the time the conservation law needs to relax `rho` to the
// stationary profile. Writes +inf when no finite a-priori bound applies to
// this initial condition.
//
// # Safety
// `model` must be a live handle, `rho` must point to `n` readable doubles
// and `out` to a writable double.
enum QpotStatus qpot_relaxation_bound(const struct QpotModel *model,
                                      const double *rho,
                                      size_t n,
                                      double *out);

// Build the minimal-action relaxation path from the stationary profile to
// the target, returned as a field handle running forward in time.
//
// `target` holds `n` cell averages. `horizon` and `cfl` use defaults when
// NaN or nonpositive (a long enough phase-dependent horizon, Courant number
// 0.9). `anchor` overrides the grown-jump position when finite. With
// `n_snapshots = 0` the field keeps every time step; otherwise it keeps
// `max(n_snapshots, 2)` evenly spaced instants. `info` may be null.
//
// # Safety
// `model` must be a live handle, `target` must point to `n` readable
// doubles, `out` to a valid location and `info` to a writable struct or
// null. On success `*out` owns the field and must be released with
// [`qpot_field_free`].
enum QpotStatus qpot_path_build(const struct QpotModel *model,
                                const double *target,
                                size_t n,
                                double horizon,
                                double cfl,
                                double anchor,
                                size_t n_snapshots,
                                struct QpotField **out,
                                struct QpotPathInfo *info);

// Assemble a field handle from raw data: `times` holds `n_times` strictly
// increasing instants, `values` holds `n_times * n_cells` densities laid
// out time-major, so `values[j * n_cells + i]` is the density at time `j`
// in cell `i`.
//
// # Safety
// `times` and `values` must point to that many readable doubles and `out`
// to a valid location. On success `*out` owns the field and must be
// released with [`qpot_field_free`].
enum QpotStatus qpot_field_new(const double *times,
                               size_t n_times,
                               const double *values,
                               size_t n_cells,
                               struct QpotField **out);

// Release a field handle. Null is ignored.
//
// # Safety
// `field` must be null or an owning pointer returned by this library that
// has not been freed yet.
void qpot_field_free(struct QpotField *field);

// Number of recorded instants, or 0 on a null handle.
//
// # Safety
// `field` must be null or a live field handle.
size_t qpot_field_n_times(const struct QpotField *field);

// Number of grid cells per profile, or 0 on a null handle.
//
// # Safety
// `field` must be null or a live field handle.
size_t qpot_field_n_cells(const struct QpotField *field);

// Instant recorded at index `j`, or NaN when the handle is null or the
// index is out of range.
//
// # Safety
// `field` must be null or a live field handle.
double qpot_field_time(const struct QpotField *field, size_t j);

// Copy the profile recorded at index `j` into `out`, which must hold
// exactly `qpot_field_n_cells` doubles.
//
// # Safety
// `field` must be a live field handle and `out` must point to `n` writable
// doubles.
enum QpotStatus qpot_field_profile(const struct QpotField *field, size_t j, double *out, size_t n);

// Read a field from a `t,x,rho` CSV file, the format written by the CLI.
//
// # Safety
// `path` must point to a NUL-terminated string and `out` to a valid
// location. On success `*out` owns the field and must be released with
// [`qpot_field_free`].
enum QpotStatus qpot_field_read_csv(const char *path, struct QpotField **out);

// Write a field as `t,x,rho` CSV, the format the CLI reads back.
//
// # Safety
// `field` must be a live field handle and `path` must point to a
// NUL-terminated string.
enum QpotStatus qpot_field_write_csv(const struct QpotField *field, const char *path);

// Score a field against the model's boundary data: interior entropy
// production plus the two boundary costs. The field's instants must be
// uniformly spaced at the resolution the field was computed with, so score
// paths built with `n_snapshots = 0`.
//
// # Safety
// `model` and `field` must be live handles and `out` must point to a
// writable struct.
enum QpotStatus qpot_action(const struct QpotModel *model,
                            const struct QpotField *field,
                            struct QpotAction *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* QPOT_H */
