#pragma once

#include <utility>
#include <vector>

#include "numerics.hpp"

namespace wetlab {

enum class ProfileKind { Flat, Triangle, Sinusoid, Tabulated };

// 1-periodic, even, nonnegative groove profile zeta with a monotone
// non-increasing semi-period [0, 1/2]. The period is normalized to 1.
//
// Flat:      zeta = 0
// Triangle:  zeta(s) = m * (1/2 - |s|)
// Sinusoid:  zeta(s) = (a/2) * (1 + cos(2*pi*s))
// Tabulated: monotone cubic through samples on [0, 1/2], zeta(1/2) = 0
class Profile {
 public:
  static Profile flat();
  static Profile triangle(double slope_m);
  static Profile sinusoid(double amplitude);
  // Samples (s, zeta) with s strictly increasing covering [0, 1/2] and zeta
  // strictly decreasing to 0. At least 4 samples.
  static Profile tabulated(std::vector<std::pair<double, double>> samples);

  ProfileKind kind() const { return kind_; }
  bool is_flat() const { return kind_ == ProfileKind::Flat; }
  // Y = max zeta = zeta(0).
  double max_height() const { return max_height_; }

  // zeta(s); s is reduced mod 1 and reflected to [0, 1/2].
  double eval(double s) const;

  // zeta'(s). Throws KinkError at the kinks of a Triangle profile.
  double slope(double s) const;

  // h(y): the s in [0, 1/2] with zeta(s) = y, for y in [0, Y].
  double inverse_height(double y) const;

  // Arc length of the graph of zeta over [s_a, s_b] within [0, 1/2].
  double arc_length(double s_a, double s_b) const;

  // r = 2 * arc_length(0, 1/2); r >= 1 with equality iff flat.
  double roughness() const;

  // gamma_c = 1 / sqrt(1 + max_s zeta'(s)^2) in (0, 1].
  double critical_gamma() const;

  // Slope on the open semi-period, no kink handling. Used by quadrature and
  // by the certificate module, which works in the s variable throughout.
  double slope_half(double s) const;

 private:
  Profile() = default;
  ProfileKind kind_ = ProfileKind::Flat;
  double param_ = 0.0;  // m for Triangle, a for Sinusoid
  double max_height_ = 0.0;
  MonotoneCubic interp_;

  // Reduce to the semi-period: returns |remainder(s, 1)| in [0, 1/2].
  static double reduce(double s);
};

}  // namespace wetlab
