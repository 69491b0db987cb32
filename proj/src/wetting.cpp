#include "wetting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "errors.hpp"

namespace wetlab {

namespace {

constexpr int kGrid = 4096;
constexpr double kTieTol = 1e-12;

// g expressed in the wall parameter s = h(y): g = s + gamma * arc(s, 1/2).
double g_of_s(const Profile& p, double gamma, double s) {
  return s + gamma * p.arc_length(s, 0.5);
}

}  // namespace

double g_of_y(const Profile& p, double gamma, double y) {
  if (p.is_flat()) throw DomainError("g is defined for non-flat profiles");
  if (y < -1e-12 || y > p.max_height() + 1e-12)
    throw DomainError("g_of_y: y outside [0, Y]");
  return g_of_s(p, gamma, p.inverse_height(std::clamp(y, 0.0, p.max_height())));
}

double contact_angle(double coefficient) {
  if (std::abs(coefficient) > 1.0 + 1e-12)
    throw DomainError("angle undefined - coefficient out of range");
  return std::acos(std::clamp(-coefficient, -1.0, 1.0));
}

EffectiveWetting effective_gamma(const Profile& p, double gamma) {
  if (gamma < 0.0 || !std::isfinite(gamma))
    throw DomainError("gamma must lie in [0, 1)");
  EffectiveWetting ew;
  ew.gamma = gamma;
  ew.gamma_c = p.critical_gamma();
  ew.roughness = p.roughness();
  ew.theta_Y = contact_angle(gamma <= 1.0 ? gamma : 1.0);
  if (gamma >= 1.0) {
    ew.regime = Regime::Degenerate;
    ew.gamma_eff = std::numeric_limits<double>::quiet_NaN();
    ew.theta_W = std::numeric_limits<double>::quiet_NaN();
    ew.theta_eff = std::numeric_limits<double>::quiet_NaN();
    return ew;
  }

  const double r = ew.roughness;
  const double rw = r * gamma;
  ew.theta_W = rw <= 1.0 ? contact_angle(rw)
                         : std::numeric_limits<double>::quiet_NaN();

  if (gamma <= ew.gamma_c) {
    ew.regime = Regime::FullWetting;
    ew.gamma_eff = rw;
    ew.cassie_f = 1.0;
    ew.cassie_rho = r;
    ew.theta_eff = ew.gamma_eff <= 1.0
                       ? contact_angle(ew.gamma_eff)
                       : std::numeric_limits<double>::quiet_NaN();
    return ew;
  }

  ew.regime = Regime::PartialWetting;

  // Dense grid of g in s with cumulative tail arc lengths, then a
  // golden-section refinement around the best grid point, always compared
  // against both endpoints.
  std::vector<double> tail(kGrid + 1, 0.0);
  for (int i = kGrid - 1; i >= 0; --i) {
    const double a = 0.5 * i / kGrid;
    const double b = 0.5 * (i + 1) / kGrid;
    tail[i] = tail[i + 1] + p.arc_length(a, b);
  }
  int best_i = 0;
  double best_v = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGrid; ++i) {
    const double v = 0.5 * i / kGrid + gamma * tail[i];
    if (v < best_v) {
      best_v = v;
      best_i = i;
    }
  }
  const double lo = 0.5 * std::max(0, best_i - 1) / kGrid;
  const double hi = 0.5 * std::min(kGrid, best_i + 1) / kGrid;
  double s_star = golden_min(
      [&](double s) { return g_of_s(p, gamma, s); }, lo, hi, 1e-13);
  // Polish an interior stationary point on g'(s) = 1 - gamma*sqrt(1+zeta'^2)
  // down to machine precision; the grid only brackets it.
  if (s_star > 1e-6 && s_star < 0.5 - 1e-6) {
    const auto gp = [&](double s) {
      return 1.0 - gamma * std::hypot(1.0, p.slope_half(s));
    };
    const double a = std::max(0.0, s_star - 1e-4);
    const double b = std::min(0.5, s_star + 1e-4);
    if (gp(a) * gp(b) < 0.0) {
      try {
        s_star = bisect(gp, a, b, 1e-16);
      } catch (const NumericError&) {
      }
    }
  }
  double g_star = g_of_s(p, gamma, s_star);

  // Candidates in order of increasing s; ties prefer the smaller s, i.e.
  // the larger y (more wetting).
  const std::pair<double, double> cand[] = {
      {0.0, gamma * tail[0]},  // y = Y
      {s_star, g_star},
      {0.5, 0.5}};  // y = 0
  s_star = cand[0].first;
  g_star = cand[0].second;
  for (const auto& [s, g] : cand) {
    if (g < g_star - kTieTol) {
      s_star = s;
      g_star = g;
    }
  }
  if (s_star < 1e-9) s_star = 0.0;
  if (s_star > 0.5 - 1e-9) s_star = 0.5;

  ew.gamma_eff = 2.0 * g_star;
  if (s_star == 0.0) {
    // Minimum at y = Y: effectively the full-wetting value.
    ew.gamma_eff = rw;
    ew.cassie_f = 1.0;
    ew.cassie_rho = r;
  } else {
    ew.s0 = s_star;
    ew.y0 = p.eval(s_star);
    auto [f, rho] = cassie_params(ew, p);
    ew.cassie_f = f;
    ew.cassie_rho = rho;
  }
  ew.theta_eff = ew.gamma_eff <= 1.0
                     ? contact_angle(ew.gamma_eff)
                     : std::numeric_limits<double>::quiet_NaN();
  return ew;
}

std::pair<double, double> cassie_params(const EffectiveWetting& ew,
                                        const Profile& p) {
  if (ew.regime == Regime::FullWetting || !ew.s0.has_value())
    return {1.0, ew.roughness};
  const double s0 = *ew.s0;
  if (s0 >= 0.5 - 1e-15) return {0.0, 1.0};
  const double f = 1.0 - 2.0 * s0;
  const double rho = p.arc_length(s0, 0.5) / (0.5 - s0);
  return {f, rho};
}

ShapeReport check_A5_shape(const Profile& p, double gamma) {
  ShapeReport rep;
  const EffectiveWetting ew = effective_gamma(p, gamma);
  if (ew.regime != Regime::PartialWetting || !ew.y0.has_value() || *ew.y0 <= 0.0)
    return rep;  // empty interval: trivially monotone
  const double y0 = *ew.y0;
  const int n = 4096;
  double prev = g_of_y(p, gamma, 0.0);
  for (int i = 1; i <= n; ++i) {
    const double y = y0 * i / n;
    const double g = g_of_y(p, gamma, y);
    if (g > prev + 1e-10) {
      rep.monotone = false;
      rep.first_violation_y = y;
      return rep;
    }
    prev = g;
  }
  return rep;
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::FullWetting:
      return "FullWetting";
    case Regime::PartialWetting:
      return "PartialWetting";
    case Regime::Degenerate:
      return "Degenerate";
  }
  return "?";
}

}  // namespace wetlab
