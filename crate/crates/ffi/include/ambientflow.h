#ifndef AMBIENTFLOW_H
#define AMBIENTFLOW_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AfCase {
  AF_CASE_A = 0,
  AF_CASE_B = 1,
  AF_CASE_C = 2,
} AfCase;

typedef enum AfStatus {
  AF_STATUS_OK = 0,
  AF_STATUS_NULL_POINTER = 1,
  AF_STATUS_INVALID_ARGUMENT = 2,
  AF_STATUS_INVALID_CURVE = 3,
  AF_STATUS_DOMAIN = 4,
  AF_STATUS_CONVEXITY_REQUIRED = 5,
  AF_STATUS_MISSING_INPUT = 6,
  AF_STATUS_INSUFFICIENT_DATA = 7,
  AF_STATUS_UNBOUNDED = 8,
  AF_STATUS_OUT_OF_RANGE = 9,
  AF_STATUS_INTERNAL = 10,
  AF_STATUS_PANIC = 11,
} AfStatus;

typedef enum AfStopReason {
  AF_STOP_REASON_EXTINCT = 0,
  AF_STOP_REASON_NONEMBEDDED = 1,
  AF_STOP_REASON_NONCONVEX_EVENT = 2,
  AF_STOP_REASON_MAX_TIME = 3,
  AF_STOP_REASON_MAX_STEPS = 4,
} AfStopReason;

/**
 * Opaque closed curve.
 */
typedef struct AfCurve AfCurve;

/**
 * Opaque ambient field.
 */
typedef struct AfField AfField;

/**
 * Opaque evolution result.
 */
typedef struct AfTrajectory AfTrajectory;

/**
 * Step control. `dt_fixed > 0` selects a fixed step, otherwise the CFL rule
 * with `c_cfl`, `c_adv`. Non-positive `dt_max` means no cap; a non-finite
 * `max_time` means no time limit.
 */
typedef struct AfStepControl {
  double dt_fixed;
  double c_cfl;
  double c_adv;
  double dt_max;
  size_t resample_every;
  double max_time;
  size_t max_steps;
  double area_floor;
  size_t snapshot_every;
  bool stop_on_nonconvex;
  double nonconvex_factor;
} AfStepControl;

typedef struct AfSeriesRow {
  double t;
  double length;
  double area;
  double winding;
  double kmin;
  double kmax;
  double fmin;
} AfSeriesRow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *af_version(void);

/**
 * Copies the calling thread's last error message into `buf` (truncated,
 * always NUL-terminated when `cap > 0`). Returns the full message length in
 * bytes excluding the NUL, or 0 when there is no error.
 *
 * # Safety
 * `buf` must be null or point to `cap` writable bytes.
 */
size_t af_last_error(char *buf, size_t cap);

/**
 * Curve from `n` interleaved points `x0, y0, x1, y1, ...`.
 *
 * # Safety
 * `xy` must point to `2n` doubles; `out` must be writable.
 */
enum AfStatus af_curve_new(const double *xy, size_t n, struct AfCurve **out_curve);

/**
 * # Safety
 * `out_curve` must be writable.
 */
enum AfStatus af_curve_new_circle(double cx,
                                  double cy,
                                  double r,
                                  size_t n,
                                  struct AfCurve **out_curve);

/**
 * # Safety
 * `out_curve` must be writable.
 */
enum AfStatus af_curve_new_ellipse(double cx,
                                   double cy,
                                   double a,
                                   double b,
                                   size_t n,
                                   struct AfCurve **out_curve);

/**
 * # Safety
 * `curve` must be null or a handle from this library not yet freed.
 */
void af_curve_free(struct AfCurve *curve);

/**
 * Number of vertices; 0 for a null handle.
 *
 * # Safety
 * `curve` must be null or a live handle.
 */
size_t af_curve_len(const struct AfCurve *curve);

/**
 * Copies the vertices into `xy` (interleaved, `cap` doubles available).
 *
 * # Safety
 * `curve` must be live; `xy` must point to `cap` writable doubles.
 */
enum AfStatus af_curve_points(const struct AfCurve *curve, double *xy, size_t cap);

/**
 * Length, enclosed area and turning number of the discrete curve.
 *
 * # Safety
 * `curve` must be live; output pointers must be writable.
 */
enum AfStatus af_curve_measures(const struct AfCurve *curve,
                                double *length,
                                double *area,
                                double *winding);

/**
 * # Safety
 * `out_field` must be writable.
 */
enum AfStatus af_field_new_zero(struct AfField **out_field);

/**
 * `V = (b, c)`.
 *
 * # Safety
 * `out_field` must be writable.
 */
enum AfStatus af_field_new_constant(double b, double c, struct AfField **out_field);

/**
 * `V = a·(y, −x) + (b, c)`.
 *
 * # Safety
 * `out_field` must be writable.
 */
enum AfStatus af_field_new_killing(double a, double b, double c, struct AfField **out_field);

/**
 * `V = (x, −x²)`.
 *
 * # Safety
 * `out_field` must be writable.
 */
enum AfStatus af_field_new_saddle(struct AfField **out_field);

/**
 * `V = (1 + |x|²)^{p/2}·x`.
 *
 * # Safety
 * `out_field` must be writable.
 */
enum AfStatus af_field_new_radial_power(double p, struct AfField **out_field);

/**
 * `V = ⟨α, x⟩·x`.
 *
 * # Safety
 * `out_field` must be writable.
 */
enum AfStatus af_field_new_radial_linear(double ax, double ay, struct AfField **out_field);

/**
 * # Safety
 * `field` must be null or a live handle.
 */
void af_field_free(struct AfField *field);

/**
 * # Safety
 * `field` must be live; `v` must point to 2 writable doubles.
 */
enum AfStatus af_field_eval(const struct AfField *field, double x, double y, double *v);

/**
 * Fills `ctl` with the library defaults.
 *
 * # Safety
 * `ctl` must be writable.
 */
enum AfStatus af_step_control_default(struct AfStepControl *ctl);

/**
 * Evolves `curve` under `F = σ1·k + σ2 + ⟨V, ν⟩`. A null `ctl` uses the
 * defaults.
 *
 * # Safety
 * Handles must be live; `ctl` null or readable; `out_traj` writable.
 */
enum AfStatus af_evolve(const struct AfCurve *curve,
                        const struct AfField *field,
                        double sigma1,
                        double sigma2,
                        const struct AfStepControl *ctl,
                        struct AfTrajectory **out_traj);

/**
 * # Safety
 * `traj` must be null or a live handle.
 */
void af_trajectory_free(struct AfTrajectory *traj);

/**
 * # Safety
 * `traj` must be live; `reason` writable.
 */
enum AfStatus af_trajectory_stop_reason(const struct AfTrajectory *traj, enum AfStopReason *reason);

/**
 * First nonconvex event time; writes NaN when there was none.
 *
 * # Safety
 * `traj` must be live; `t` writable.
 */
enum AfStatus af_trajectory_nonconvex_time(const struct AfTrajectory *traj, double *t);

/**
 * Number of rows of the per-step series; 0 for a null handle.
 *
 * # Safety
 * `traj` must be null or live.
 */
size_t af_trajectory_series_len(const struct AfTrajectory *traj);

/**
 * # Safety
 * `traj` must be live; `row` writable.
 */
enum AfStatus af_trajectory_series_row(const struct AfTrajectory *traj,
                                       size_t i,
                                       struct AfSeriesRow *row);

/**
 * Number of stored snapshots; 0 for a null handle.
 *
 * # Safety
 * `traj` must be null or live.
 */
size_t af_trajectory_snapshot_count(const struct AfTrajectory *traj);

/**
 * Copies snapshot `i` into a new curve handle and writes its time.
 *
 * # Safety
 * `traj` must be live; `t` and `out_curve` writable.
 */
enum AfStatus af_trajectory_snapshot(const struct AfTrajectory *traj,
                                     size_t i,
                                     double *t,
                                     struct AfCurve **out_curve);

/**
 * Extinction time and point of a run that stopped at the area floor.
 *
 * # Safety
 * `traj` must be live; outputs writable.
 */
enum AfStatus af_trajectory_extinction(const struct AfTrajectory *traj,
                                       double *time,
                                       double *ox,
                                       double *oy);

/**
 * Curvature threshold `K` for bounds `C1`, `C2` on the field's derivatives.
 *
 * # Safety
 * `k` must be writable.
 */
enum AfStatus af_curvature_threshold(double sigma1, double sigma2, double c1, double c2, double *k);

/**
 * Length threshold `M`; writes `+inf` when it is infinite. `x_t0` is used
 * only for case C (pass NaN otherwise).
 *
 * # Safety
 * `m` must be writable.
 */
enum AfStatus af_length_threshold(enum AfCase case_,
                                  double sigma1,
                                  double sigma2,
                                  double c0,
                                  double c1,
                                  double x_t0,
                                  double *m);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AMBIENTFLOW_H */
