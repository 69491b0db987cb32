#pragma once

#include <functional>
#include <vector>

namespace wetlab {

// Adaptive Simpson quadrature with absolute tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-10, int max_depth = 60);

// Golden-section minimization of a unimodal function on [a, b]; returns the
// abscissa of the minimum.
double golden_min(const std::function<double(double)>& f, double a, double b,
                  double xtol = 1e-12);

// Bisection root of f on [a, b]; requires f(a) and f(b) of opposite sign
// (zero counts as either sign).
double bisect(const std::function<double(double)>& f, double a, double b,
              double xtol = 1e-15);

// Fritsch-Carlson monotone cubic interpolant through (x_i, y_i), x strictly
// increasing. Preserves monotonicity of the data.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double eval(double x) const;
  double deriv(double x) const;
  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }

 private:
  int find(double x) const;
  std::vector<double> x_, y_, d_;
};

}  // namespace wetlab
