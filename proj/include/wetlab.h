#ifndef WETLAB_H
#define WETLAB_H

/* C interface to the wetting laboratory. All functions return a status
 * code; outputs go through pointers. On any non-WL_OK status a
 * thread-local message is available via wl_last_error(). */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wl_status {
  WL_OK = 0,
  WL_ERR_USAGE = 1,      /* bad arguments, config or file problems */
  WL_ERR_CONSTRAINT = 2, /* geometry, profile or constraint violations */
  WL_ERR_NUMERIC = 3,    /* quadrature / solver non-convergence */
  WL_ERR_INTERNAL = 4
} wl_status;

typedef enum wl_regime {
  WL_FULL_WETTING = 0,
  WL_PARTIAL_WETTING = 1,
  WL_DEGENERATE = 2
} wl_regime;

typedef enum wl_verdict {
  WL_NOT_CERTIFIED = 0,
  WL_CERTIFIED = 1
} wl_verdict;

/* Opaque groove-profile handle. */
typedef struct wl_profile wl_profile;

/* Constructors; every successful create must be paired with wl_profile_free.
 * Tabulated profiles take n >= 4 samples (s[i], zeta[i]) with s strictly
 * increasing over [0, 1/2] and zeta strictly decreasing to 0. */
wl_status wl_profile_flat(wl_profile** out);
wl_status wl_profile_triangle(double slope_m, wl_profile** out);
wl_status wl_profile_sinusoid(double amplitude, wl_profile** out);
wl_status wl_profile_tabulated(const double* s, const double* zeta, size_t n,
                               wl_profile** out);
void wl_profile_free(wl_profile* p);

/* Pointwise queries. */
wl_status wl_profile_eval(const wl_profile* p, double s, double* out);
wl_status wl_profile_slope(const wl_profile* p, double s, double* out);
wl_status wl_profile_inverse_height(const wl_profile* p, double y, double* out);
wl_status wl_profile_arc_length(const wl_profile* p, double s_a, double s_b,
                                double* out);
wl_status wl_profile_roughness(const wl_profile* p, double* out);
wl_status wl_profile_critical_gamma(const wl_profile* p, double* out);
wl_status wl_profile_max_height(const wl_profile* p, double* out);

/* Effective-wetting analysis. Angles in radians; has_y0 == 0 means the
 * minimum of the groove energy sits at y = Y (y0/s0 are then unset). */
typedef struct wl_wetting {
  double gamma;
  double gamma_c;
  double roughness;
  int regime; /* wl_regime */
  double gamma_eff;
  int has_y0;
  double y0;
  double s0;
  double cassie_f;
  double cassie_rho;
  double theta_Y;
  double theta_W;
  double theta_eff;
} wl_wetting;

wl_status wl_analyze(const wl_profile* p, double gamma, wl_wetting* out);

/* Closed-form unreachability certificate for the groove domain below y0.
 * vacuous == 1 when the domain is empty (y0 >= Y). */
typedef struct wl_certificate {
  int verdict; /* wl_verdict */
  int vacuous;
  double y1;
  double worst_margin;
  double witness_y;
} wl_certificate;

wl_status wl_certify_explicit(const wl_profile* p, double gamma, double y0,
                              wl_certificate* out);

/* Full pipeline entry point: parses the config file, applies "key=value"
 * overrides, runs one subcommand (analyze | certify | minimize | converge)
 * and returns its exit code as a wl_status. threads <= 0 keeps the config /
 * hardware default. */
wl_status wl_run(const char* subcommand, const char* config_path,
                 const char* const* overrides, size_t n_overrides,
                 int threads);

/* Message for the last failing call on this thread ("" if none). */
const char* wl_last_error(void);

#ifdef __cplusplus
}
#endif

#endif /* WETLAB_H */
