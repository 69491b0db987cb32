#include <cmath>

#include "doctest.h"
#include "errors.hpp"
#include "profile.hpp"
#include "wetting.hpp"

using namespace wetlab;

TEST_SUITE("wetting") {

TEST_CASE("flat wall is the Young case") {
  Profile p = Profile::flat();
  EffectiveWetting w = effective_gamma(p, 0.5);
  CHECK(w.regime == Regime::FullWetting);
  CHECK(w.gamma_eff == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(w.theta_Y == doctest::Approx(std::acos(-0.5)).epsilon(1e-12));
  CHECK(w.theta_eff == doctest::Approx(w.theta_Y).epsilon(1e-12));
}

TEST_CASE("triangle endpoint minimizer") {
  Profile p = Profile::triangle(2.0);
  EffectiveWetting w = effective_gamma(p, 0.6);
  CHECK(w.regime == Regime::PartialWetting);
  CHECK(w.gamma_eff == doctest::Approx(1.0).epsilon(1e-8));
  REQUIRE(w.y0.has_value());
  CHECK(*w.y0 == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(*w.s0 == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("full wetting below gamma_c and continuity at the transition") {
  Profile p = Profile::triangle(2.0);
  double gc = p.critical_gamma();
  double r = p.roughness();
  for (double g : {0.1, 0.3, gc - 1e-6}) {
    EffectiveWetting w = effective_gamma(p, g);
    CHECK(w.regime == Regime::FullWetting);
    CHECK(w.gamma_eff == doctest::Approx(r * g).epsilon(1e-12));
    CHECK(!w.y0.has_value());
  }
  EffectiveWetting lo = effective_gamma(p, gc - 1e-7);
  EffectiveWetting hi = effective_gamma(p, gc + 1e-7);
  CHECK(std::abs(lo.gamma_eff - hi.gamma_eff) < 1e-5);
}

TEST_CASE("sinusoid interior minimizer at gamma 0.8") {
  Profile p = Profile::sinusoid(0.5);
  EffectiveWetting w = effective_gamma(p, 0.8);
  CHECK(w.regime == Regime::PartialWetting);
  REQUIRE(w.s0.has_value());
  // frozen oracle values
  CHECK(*w.s0 == doctest::Approx(0.4207778986).epsilon(1e-7));
  CHECK(w.gamma_eff == doctest::Approx(0.9797176151).epsilon(1e-8));
  // first-order condition |h'(y0)| = gamma / sqrt(1 - gamma^2) = 4/3
  double hp = 1.0 / p.slope_half(*w.s0);
  CHECK(std::abs(hp) == doctest::Approx(4.0 / 3.0).epsilon(1e-6));
  // Cassie identity
  double lhs = -w.gamma_eff;
  double rhs = w.cassie_rho * w.cassie_f * (-0.8) + w.cassie_f - 1.0;
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
  CHECK(w.cassie_f == doctest::Approx(1.0 - 2.0 * *w.s0).epsilon(1e-10));
}

TEST_CASE("interior minimizer first-order condition across gamma") {
  Profile p = Profile::sinusoid(0.5);
  for (double g : {0.7, 0.75, 0.8, 0.85, 0.9}) {
    EffectiveWetting w = effective_gamma(p, g);
    if (!w.y0 || *w.y0 <= 1e-9 || *w.y0 >= p.max_height() - 1e-9) continue;
    double hp = std::abs(1.0 / p.slope_half(*w.s0));
    CHECK(hp == doctest::Approx(g / std::sqrt(1.0 - g * g)).epsilon(1e-6));
  }
}

TEST_CASE("gamma_eff bounds and monotonicity") {
  Profile p = Profile::sinusoid(0.5);
  double prev = -1.0;
  for (int i = 0; i < 20; ++i) {
    double g = 0.999 * i / 19.0;
    EffectiveWetting w = effective_gamma(p, g);
    CHECK(w.gamma_eff >= g - 1e-12);         // rough wall never helps drying
    CHECK(w.gamma_eff <= 1.0 + 1e-12);
    CHECK(w.gamma_eff >= prev - 1e-10);      // monotone in gamma
    prev = w.gamma_eff;
  }
}

TEST_CASE("g shape check (A5)") {
  Profile p = Profile::sinusoid(0.5);
  for (double g : {0.6, 0.7, 0.8})
    CHECK(check_A5_shape(p, g).monotone);
}

TEST_CASE("contact angle helper") {
  CHECK(contact_angle(0.0) == doctest::Approx(1.57079632679).epsilon(1e-10));
  CHECK(contact_angle(0.5) == doctest::Approx(std::acos(-0.5)).epsilon(1e-12));
  CHECK_THROWS_AS(contact_angle(1.5), DomainError);
}

TEST_CASE("regime names") {
  CHECK(std::string(regime_name(Regime::FullWetting)) == "FullWetting");
  CHECK(std::string(regime_name(Regime::PartialWetting)) == "PartialWetting");
}

}  // TEST_SUITE
