#include <math.h>
#include <stdio.h>
#include "ambientflow.h"

#define CHECK(x)                                                   \
  do {                                                             \
    AfStatus s_ = (x);                                             \
    if (s_ != AF_STATUS_OK) {                                      \
      char buf[256];                                               \
      af_last_error(buf, sizeof buf);                              \
      fprintf(stderr, "%s -> %d: %s\n", #x, (int)s_, buf);         \
      return 1;                                                    \
    }                                                              \
  } while (0)

int main(void) {
  AfCurve *c = NULL;
  AfField *f = NULL;
  AfTrajectory *t = NULL;
  AfStepControl ctl;
  double T, ox, oy, k;
  CHECK(af_curve_new_circle(0.0, 0.0, 0.5, 96, &c));
  CHECK(af_field_new_zero(&f));
  CHECK(af_step_control_default(&ctl));
  ctl.area_floor = 1e-3;
  ctl.resample_every = 5;
  CHECK(af_evolve(c, f, 1.0, 0.0, &ctl, &t));
  CHECK(af_trajectory_extinction(t, &T, &ox, &oy));
  if (fabs(T - 0.125) > 0.125 * 0.01) {
    fprintf(stderr, "T = %g\n", T);
    return 2;
  }
  CHECK(af_curvature_threshold(1.0, 0.0, sqrt(2.0), 2.0, &k));
  if (fabs(k - 2.2640685027055252) > 1e-12) return 3;
  if (af_curve_new_circle(0.0, 0.0, -1.0, 96, NULL) != AF_STATUS_NULL_POINTER) return 4;
  af_trajectory_free(t);
  af_field_free(f);
  af_curve_free(c);
  printf("ok %s\n", af_version());
  return 0;
}
