#include "profile.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace wetlab {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kQuadTol = 1e-10;
constexpr int kQuadDepth = 60;
constexpr double kKinkTol = 1e-12;
}  // namespace

Profile Profile::flat() {
  Profile p;
  p.kind_ = ProfileKind::Flat;
  p.max_height_ = 0.0;
  return p;
}

Profile Profile::triangle(double slope_m) {
  if (!(slope_m > 0.0) || !std::isfinite(slope_m))
    throw InvalidProfileError("triangle profile needs slope m > 0");
  Profile p;
  p.kind_ = ProfileKind::Triangle;
  p.param_ = slope_m;
  p.max_height_ = slope_m * 0.5;
  return p;
}

Profile Profile::sinusoid(double amplitude) {
  if (!(amplitude > 0.0) || !std::isfinite(amplitude))
    throw InvalidProfileError("sinusoid profile needs amplitude a > 0");
  Profile p;
  p.kind_ = ProfileKind::Sinusoid;
  p.param_ = amplitude;
  p.max_height_ = amplitude;
  return p;
}

Profile Profile::tabulated(std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 4)
    throw InvalidProfileError("tabulated profile needs at least 4 samples");
  std::vector<double> s, z;
  s.reserve(samples.size());
  z.reserve(samples.size());
  for (const auto& [si, zi] : samples) {
    s.push_back(si);
    z.push_back(zi);
  }
  if (std::abs(s.front()) > 1e-9 || std::abs(s.back() - 0.5) > 1e-9)
    throw InvalidProfileError("tabulated samples must cover [0, 1/2]");
  for (size_t i = 1; i < s.size(); ++i) {
    if (!(s[i] > s[i - 1]))
      throw InvalidProfileError("tabulated samples must be strictly increasing in s");
    if (!(z[i] < z[i - 1]))
      throw InvalidProfileError("tabulated heights must be strictly decreasing");
  }
  if (std::abs(z.back()) > 1e-12)
    throw InvalidProfileError("tabulated profile must reach zeta(1/2) = 0");
  if (z.front() <= 0.0)
    throw InvalidProfileError("tabulated profile must be positive at s = 0");
  s.front() = 0.0;
  s.back() = 0.5;
  z.back() = 0.0;
  Profile p;
  p.kind_ = ProfileKind::Tabulated;
  p.max_height_ = z.front();
  p.interp_ = MonotoneCubic(std::move(s), std::move(z));
  return p;
}

double Profile::reduce(double s) { return std::abs(std::remainder(s, 1.0)); }

double Profile::eval(double s) const {
  const double u = reduce(s);
  switch (kind_) {
    case ProfileKind::Flat:
      return 0.0;
    case ProfileKind::Triangle:
      return param_ * (0.5 - u);
    case ProfileKind::Sinusoid:
      return 0.5 * param_ * (1.0 + std::cos(2.0 * kPi * u));
    case ProfileKind::Tabulated:
      return interp_.eval(u);
  }
  return 0.0;
}

double Profile::slope_half(double s) const {
  switch (kind_) {
    case ProfileKind::Flat:
      return 0.0;
    case ProfileKind::Triangle:
      return -param_;
    case ProfileKind::Sinusoid:
      return -param_ * kPi * std::sin(2.0 * kPi * s);
    case ProfileKind::Tabulated:
      return interp_.deriv(s);
  }
  return 0.0;
}

double Profile::slope(double s) const {
  const double t = std::remainder(s, 1.0);  // [-1/2, 1/2]
  const double u = std::abs(t);
  if (kind_ == ProfileKind::Triangle &&
      (u < kKinkTol || u > 0.5 - kKinkTol)) {
    // Odd extension: one-sided derivatives at the crest/trough kinks.
    if (u < kKinkTol) throw KinkError(param_, -param_);
    throw KinkError(-param_, param_);
  }
  const double g = slope_half(u);
  return t < 0.0 ? -g : g;
}

double Profile::inverse_height(double y) const {
  if (kind_ == ProfileKind::Flat)
    throw NoInverseError("flat profile has no height inverse");
  const double Y = max_height_;
  if (y < -1e-12 || y > Y + 1e-12)
    throw DomainError("inverse_height: y outside [0, Y]");
  y = std::clamp(y, 0.0, Y);
  if (y == 0.0) return 0.5;
  if (y == Y) return 0.0;
  if (kind_ == ProfileKind::Triangle) return 0.5 - y / param_;
  // Bisection on the monotone branch; zeta decreasing on [0, 1/2].
  double lo = 0.0, hi = 0.5;
  for (int i = 0; i < 100 && hi - lo > 1e-16; ++i) {
    const double m = 0.5 * (lo + hi);
    (eval(m) > y ? lo : hi) = m;
  }
  return 0.5 * (lo + hi);
}

double Profile::arc_length(double s_a, double s_b) const {
  if (s_a < -1e-12 || s_b > 0.5 + 1e-12 || s_a > s_b + 1e-12)
    throw DomainError("arc_length: need 0 <= s_a <= s_b <= 1/2");
  s_a = std::clamp(s_a, 0.0, 0.5);
  s_b = std::clamp(s_b, 0.0, 0.5);
  if (s_b <= s_a) return 0.0;
  switch (kind_) {
    case ProfileKind::Flat:
      return s_b - s_a;
    case ProfileKind::Triangle:
      return (s_b - s_a) * std::hypot(1.0, param_);
    default:
      return integrate(
          [this](double s) { return std::hypot(1.0, slope_half(s)); }, s_a,
          s_b, kQuadTol, kQuadDepth);
  }
}

double Profile::roughness() const { return 2.0 * arc_length(0.0, 0.5); }

double Profile::critical_gamma() const {
  switch (kind_) {
    case ProfileKind::Flat:
      return 1.0;
    case ProfileKind::Triangle:
      return 1.0 / std::hypot(1.0, param_);
    default:
      break;
  }
  // Dense scan plus golden-section refinement of max |zeta'|.
  const int n = 1 << 14;
  double best = 0.0;
  int best_i = 0;
  for (int i = 0; i <= n; ++i) {
    const double s = 0.5 * i / n;
    const double a = std::abs(slope_half(s));
    if (a > best) {
      best = a;
      best_i = i;
    }
  }
  const double lo = 0.5 * std::max(0, best_i - 1) / n;
  const double hi = 0.5 * std::min(n, best_i + 1) / n;
  const double s_star = golden_min(
      [this](double s) { return -std::abs(slope_half(s)); }, lo, hi, 1e-13);
  best = std::max(best, std::abs(slope_half(s_star)));
  return 1.0 / std::hypot(1.0, best);
}

}  // namespace wetlab
