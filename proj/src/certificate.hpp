#pragma once

#include <optional>
#include <vector>

#include "profile.hpp"

namespace wetlab {

enum class Verdict { Certified, NotCertified };
enum class CertMethod { ExplicitLemma, SigmaBeta, DiscreteField };

struct CertificateResult {
  Verdict verdict = Verdict::NotCertified;
  CertMethod method = CertMethod::ExplicitLemma;
  double y1 = 0.0;
  double worst_margin = 0.0;   // min over checked points of RHS - LHS
  double witness_y = 0.0;      // location of the worst margin
  bool vacuous = false;        // empty groove domain (y0 >= Y)
};

// The groove region {(x, y) : y0 <= y <= Y, |x| <= h(y)} with its flat lid
// at y = y0 (Gamma_1) and the curved side walls (Gamma_2).
struct GrooveDomain {
  const Profile* profile = nullptr;
  double y0 = 0.0;
  double Y = 0.0;
  bool empty() const { return y0 >= Y; }
};

// A pair of margin profiles (sigma, beta) tabulated on a y grid.
struct SigmaBetaTable {
  std::vector<double> y;
  std::vector<double> sigma;
  std::vector<double> beta;
};

// A vector field sampled on a uniform rectangular grid of node points
// (x0 + i*dx, ybase + j*dy), i < nx, j < ny, row-major in i.
struct DiscreteField {
  int nx = 0, ny = 0;
  double x0 = 0.0, ybase = 0.0, dx = 0.0, dy = 0.0;
  std::vector<double> wx, wy;
};

// Pointwise tolerances for the discrete-field check.
struct FieldSlack {
  double norm = 0.0;
  double divergence = 0.0;
  double boundary = 0.0;
  static FieldSlack from_spacing(double spacing) {
    const double s = 1e-6 * spacing;
    return {s, s, s};
  }
};

// Which closed form to use for the derived (sigma, beta) pair. PaperSqrt is
// sigma = sqrt((1 - I^2)+); SaturatingCos is the exact solution
// sigma = cos(I), beta = sin(I)/h of sigma' + beta = 0, saturated past
// I = pi/2. Only the latter satisfies the monotonicity condition (b).
enum class SigmaVariant { PaperSqrt, SaturatingCos };

// I(y) = int_{y0}^{y} 1/h, evaluated in the s variable.
double weighted_depth(const Profile& p, double y0, double y);

// Threshold height: Y if int_{y0}^{Y} 1/h <= 1, else the unique y1 with
// int_{y0}^{y1} 1/h = 1.
double compute_y1(const Profile& p, double y0);

// Closed-form two-inequality certificate. Requires a profile whose slope
// vanishes at s = 0 and s = 1/2 (Sinusoid, or Tabulated passing the
// end-slope check); Triangle profiles are rejected.
CertificateResult certify_explicit(const Profile& p, double gamma, double y0);

// Generic (sigma, beta) certificate: checks
//   (a) sigma^2 + h^2 beta^2 <= 1
//   (b) sigma' + beta >= 0        (centered differences)
//   (c) -h' sigma + h beta <= gamma sqrt(1 + h'^2)
//   (d) sigma(y0) = 1
// pointwise with slack 1e-9. Condition (c) is evaluated in scaled form to
// stay bounded where h' blows up.
CertificateResult certify_sigma_beta(const Profile& p, double gamma, double y0,
                                     const SigmaBetaTable& table);
CertificateResult certify_sigma_beta(const Profile& p, double gamma, double y0,
                                     const SigmaBetaTable& table,
                                     double slack);

// Tabulates the derived (sigma, beta) pair on n points.
SigmaBetaTable make_sigma_beta(const Profile& p, double y0, int n,
                               SigmaVariant variant);

// Builds the induced field w = x beta(y) e_x + sigma(y) e_y on an n x n
// grid covering the groove domain.
DiscreteField make_induced_field(const GrooveDomain& groove,
                                 const SigmaBetaTable& table, int n);

// Vector-field certificate: (a) |w| <= 1 in D, (b) div w >= 0 in the
// interior, (c) w . nu <= gamma on the side walls, (d) w . nu = -1 on the
// lid (w_y = 1 there).
CertificateResult certify_discrete_field(const GrooveDomain& groove,
                                         double gamma,
                                         const DiscreteField& field,
                                         const FieldSlack& slack);
CertificateResult certify_discrete_field(const GrooveDomain& groove,
                                         double gamma,
                                         const DiscreteField& field);

}  // namespace wetlab
