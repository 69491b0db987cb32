#include "wetlab.h"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "certificate.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "profile.hpp"
#include "run.hpp"
#include "wetting.hpp"

using namespace wetlab;

struct wl_profile {
  Profile impl;
};

namespace {

thread_local std::string g_last_error;

wl_status fail(wl_status code, const char* what) {
  g_last_error = what;
  return code;
}

// Maps a thrown exception onto a status code, mirroring the CLI exit codes.
wl_status translate() {
  try {
    throw;
  } catch (const ValidationError& e) {
    return fail(WL_ERR_USAGE, e.what());
  } catch (const IoError& e) {
    return fail(WL_ERR_USAGE, e.what());
  } catch (const NumericError& e) {
    return fail(WL_ERR_NUMERIC, e.what());
  } catch (const MeasurementError& e) {
    return fail(WL_ERR_NUMERIC, e.what());
  } catch (const std::exception& e) {
    return fail(WL_ERR_CONSTRAINT, e.what());
  } catch (...) {
    return fail(WL_ERR_INTERNAL, "unknown error");
  }
}

template <typename F>
wl_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return WL_OK;
  } catch (...) {
    return translate();
  }
}

wl_status make_handle(Profile p, wl_profile** out) {
  if (!out) return fail(WL_ERR_USAGE, "null output pointer");
  *out = new wl_profile{std::move(p)};
  g_last_error.clear();
  return WL_OK;
}

}  // namespace

extern "C" {

wl_status wl_profile_flat(wl_profile** out) {
  return make_handle(Profile::flat(), out);
}

wl_status wl_profile_triangle(double slope_m, wl_profile** out) {
  if (!out) return fail(WL_ERR_USAGE, "null output pointer");
  try {
    return make_handle(Profile::triangle(slope_m), out);
  } catch (...) {
    return translate();
  }
}

wl_status wl_profile_sinusoid(double amplitude, wl_profile** out) {
  if (!out) return fail(WL_ERR_USAGE, "null output pointer");
  try {
    return make_handle(Profile::sinusoid(amplitude), out);
  } catch (...) {
    return translate();
  }
}

wl_status wl_profile_tabulated(const double* s, const double* zeta, size_t n,
                               wl_profile** out) {
  if (!out) return fail(WL_ERR_USAGE, "null output pointer");
  if (!s || !zeta) return fail(WL_ERR_USAGE, "null sample array");
  try {
    std::vector<std::pair<double, double>> samples(n);
    for (size_t i = 0; i < n; ++i) samples[i] = {s[i], zeta[i]};
    return make_handle(Profile::tabulated(std::move(samples)), out);
  } catch (...) {
    return translate();
  }
}

void wl_profile_free(wl_profile* p) { delete p; }

#define WL_REQUIRE(cond, msg) \
  do {                        \
    if (!(cond)) return fail(WL_ERR_USAGE, msg); \
  } while (0)

wl_status wl_profile_eval(const wl_profile* p, double s, double* out) {
  WL_REQUIRE(p && out, "null argument");
  return guarded([&] { *out = p->impl.eval(s); });
}

wl_status wl_profile_slope(const wl_profile* p, double s, double* out) {
  WL_REQUIRE(p && out, "null argument");
  return guarded([&] { *out = p->impl.slope(s); });
}

wl_status wl_profile_inverse_height(const wl_profile* p, double y, double* out) {
  WL_REQUIRE(p && out, "null argument");
  return guarded([&] { *out = p->impl.inverse_height(y); });
}

wl_status wl_profile_arc_length(const wl_profile* p, double s_a, double s_b,
                                double* out) {
  WL_REQUIRE(p && out, "null argument");
  return guarded([&] { *out = p->impl.arc_length(s_a, s_b); });
}

wl_status wl_profile_roughness(const wl_profile* p, double* out) {
  WL_REQUIRE(p && out, "null argument");
  return guarded([&] { *out = p->impl.roughness(); });
}

wl_status wl_profile_critical_gamma(const wl_profile* p, double* out) {
  WL_REQUIRE(p && out, "null argument");
  return guarded([&] { *out = p->impl.critical_gamma(); });
}

wl_status wl_profile_max_height(const wl_profile* p, double* out) {
  WL_REQUIRE(p && out, "null argument");
  return guarded([&] { *out = p->impl.max_height(); });
}

wl_status wl_analyze(const wl_profile* p, double gamma, wl_wetting* out) {
  WL_REQUIRE(p && out, "null argument");
  return guarded([&] {
    EffectiveWetting w = effective_gamma(p->impl, gamma);
    out->gamma = w.gamma;
    out->gamma_c = w.gamma_c;
    out->roughness = w.roughness;
    out->regime = static_cast<int>(w.regime);
    out->gamma_eff = w.gamma_eff;
    out->has_y0 = w.y0 ? 1 : 0;
    out->y0 = w.y0.value_or(0.0);
    out->s0 = w.s0.value_or(0.0);
    out->cassie_f = w.cassie_f;
    out->cassie_rho = w.cassie_rho;
    out->theta_Y = w.theta_Y;
    out->theta_W = w.theta_W;
    out->theta_eff = w.theta_eff;
  });
}

wl_status wl_certify_explicit(const wl_profile* p, double gamma, double y0,
                              wl_certificate* out) {
  WL_REQUIRE(p && out, "null argument");
  return guarded([&] {
    if (y0 >= p->impl.max_height()) {
      out->verdict = WL_CERTIFIED;
      out->vacuous = 1;
      out->y1 = p->impl.max_height();
      out->worst_margin = 0.0;
      out->witness_y = y0;
      return;
    }
    CertificateResult r = certify_explicit(p->impl, gamma, y0);
    out->verdict = r.verdict == Verdict::Certified ? WL_CERTIFIED : WL_NOT_CERTIFIED;
    out->vacuous = r.vacuous ? 1 : 0;
    out->y1 = r.y1;
    out->worst_margin = r.worst_margin;
    out->witness_y = r.witness_y;
  });
}

wl_status wl_run(const char* subcommand, const char* config_path,
                 const char* const* overrides, size_t n_overrides,
                 int threads) {
  WL_REQUIRE(subcommand && config_path, "null argument");
  try {
    std::vector<std::string> ov;
    for (size_t i = 0; i < n_overrides; ++i) {
      WL_REQUIRE(overrides && overrides[i], "null override");
      ov.emplace_back(overrides[i]);
    }
    RunConfig cfg = parse_config(config_path, ov);
    if (threads > 0) cfg.threads = threads;
    int code = run(subcommand, cfg);
    if (code == 0) {
      g_last_error.clear();
      return WL_OK;
    }
    g_last_error = "subcommand failed with exit code " + std::to_string(code);
    return static_cast<wl_status>(code);
  } catch (...) {
    return translate();
  }
}

const char* wl_last_error(void) { return g_last_error.c_str(); }

}  // extern "C"
