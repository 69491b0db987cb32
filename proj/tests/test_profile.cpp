#include <cmath>
#include <vector>

#include "doctest.h"
#include "errors.hpp"
#include "profile.hpp"

using namespace wetlab;

namespace {
const double kPi = 3.14159265358979323846;

// Plain Riemann arc-length oracle, independent of the adaptive quadrature.
double riemann_roughness(double a, int n) {
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double s = (i + 0.5) / (2.0 * n);  // midpoints of [0, 1/2]
    double zp = -a * kPi * std::sin(2.0 * kPi * s);
    sum += std::sqrt(1.0 + zp * zp) / (2.0 * n);
  }
  return 2.0 * sum;
}
}  // namespace

TEST_SUITE("profile") {

TEST_CASE("flat profile") {
  Profile p = Profile::flat();
  CHECK(p.is_flat());
  CHECK(p.eval(0.17) == 0.0);
  CHECK(p.max_height() == 0.0);
  CHECK(p.roughness() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.critical_gamma() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("triangle closed forms") {
  Profile p = Profile::triangle(2.0);
  CHECK(p.max_height() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.eval(0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.eval(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(p.slope(0.25) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(p.roughness() == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
  CHECK(p.critical_gamma() ==
        doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-12));
  CHECK_THROWS_AS(p.slope(0.0), KinkError);
  CHECK_THROWS_AS(p.slope(0.5), KinkError);
}

TEST_CASE("periodicity and evenness") {
  Profile p = Profile::sinusoid(0.5);
  for (double s : {0.03, 0.21, 0.48, 0.5, 0.77}) {
    CHECK(p.eval(s) == doctest::Approx(p.eval(-s)).epsilon(1e-14));
    CHECK(p.eval(s) == doctest::Approx(p.eval(s + 1.0)).epsilon(1e-13));
    CHECK(p.eval(s) == doctest::Approx(p.eval(s - 3.0)).epsilon(1e-13));
  }
}

TEST_CASE("sinusoid roughness against Riemann oracle") {
  Profile p = Profile::sinusoid(0.5);
  // frozen from a 1e7-point evaluation
  CHECK(p.roughness() == doctest::Approx(1.4636954724).epsilon(1e-9));
  CHECK(p.roughness() ==
        doctest::Approx(riemann_roughness(0.5, 200000)).epsilon(1e-9));
  CHECK(p.critical_gamma() ==
        doctest::Approx(1.0 / std::sqrt(1.0 + kPi * kPi / 4.0)).epsilon(1e-12));
}

TEST_CASE("inverse height round trip") {
  Profile p = Profile::sinusoid(0.5);
  for (int i = 0; i <= 20; ++i) {
    double y = 0.5 * i / 20.0;
    double s = p.inverse_height(y);
    CHECK(s >= 0.0);
    CHECK(s <= 0.5);
    CHECK(p.eval(s) == doctest::Approx(y).epsilon(1e-9));
  }
}

TEST_CASE("arc length additivity and roughness identity") {
  Profile p = Profile::sinusoid(0.5);
  double whole = p.arc_length(0.0, 0.5);
  double parts = p.arc_length(0.0, 0.2) + p.arc_length(0.2, 0.5);
  CHECK(whole == doctest::Approx(parts).epsilon(1e-10));
  CHECK(p.roughness() == doctest::Approx(2.0 * whole).epsilon(1e-12));
  CHECK(p.roughness() >= 1.0);
}

TEST_CASE("tabulated profile approximates its source") {
  std::vector<std::pair<double, double>> samples;
  Profile src = Profile::sinusoid(0.5);
  for (int i = 0; i <= 64; ++i) {
    double s = 0.5 * i / 64.0;
    samples.emplace_back(s, src.eval(s));
  }
  Profile tab = Profile::tabulated(samples);
  CHECK(tab.max_height() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(tab.roughness() == doctest::Approx(src.roughness()).epsilon(1e-4));
  for (double s : {0.1, 0.23, 0.4})
    CHECK(tab.eval(s) == doctest::Approx(src.eval(s)).epsilon(1e-4));
}

TEST_CASE("tabulated profile rejects bad samples") {
  CHECK_THROWS_AS(Profile::tabulated({{0.0, 1.0}, {0.5, 0.0}}),
                  InvalidProfileError);
  CHECK_THROWS_AS(
      Profile::tabulated({{0.0, 1.0}, {0.2, 0.5}, {0.1, 0.4}, {0.5, 0.0}}),
      InvalidProfileError);
  CHECK_THROWS_AS(
      Profile::tabulated({{0.0, 1.0}, {0.2, 0.5}, {0.3, 0.8}, {0.5, 0.0}}),
      InvalidProfileError);
}

}  // TEST_SUITE
