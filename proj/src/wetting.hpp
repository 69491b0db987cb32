#pragma once

#include <optional>

#include "profile.hpp"

namespace wetlab {

enum class Regime { FullWetting, PartialWetting, Degenerate };

// Result of the effective-energy analysis for a profile at interaction
// strength gamma.
struct EffectiveWetting {
  double gamma = 0.0;
  double gamma_c = 1.0;
  double roughness = 1.0;
  Regime regime = Regime::FullWetting;
  double gamma_eff = 0.0;
  std::optional<double> y0;  // none when the minimum sits at y = Y
  std::optional<double> s0;  // h(y0)
  double cassie_f = 1.0;
  double cassie_rho = 1.0;
  double theta_Y = 0.0;
  double theta_W = 0.0;
  double theta_eff = 0.0;
};

struct ShapeReport {
  bool monotone = true;
  std::optional<double> first_violation_y;
};

// g(y) = h(y) + gamma * (arc length of the wall graph from height 0 to
// height y), evaluated in the s variable.
double g_of_y(const Profile& p, double gamma, double y);

// Global minimization of g over [0, Y]; fills regime, gamma_eff = 2 inf g,
// minimizer location, Cassie parameters and contact angles.
EffectiveWetting effective_gamma(const Profile& p, double gamma);

// Wetted-fraction f = 1 - 2 s0 and wetted-roughness rho.
std::pair<double, double> cassie_params(const EffectiveWetting& ew,
                                        const Profile& p);

// arccos(-coefficient); throws DomainError for |coefficient| > 1.
double contact_angle(double coefficient);

// Checks that g is non-increasing on [0, y0].
ShapeReport check_A5_shape(const Profile& p, double gamma);

const char* regime_name(Regime r);

}  // namespace wetlab
