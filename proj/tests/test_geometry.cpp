#include <cmath>

#include "doctest.h"
#include "errors.hpp"
#include "geometry.hpp"
#include "profile.hpp"

using namespace wetlab;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_SUITE("geometry") {

TEST_CASE("flat channel boundary and trace bookkeeping") {
  Profile p = Profile::flat();
  RoughDomain dom = make_channel(1.0, 0.6, p, 1.0, 0.3, 0.999);
  CHECK(boundary_length(dom) == doctest::Approx(2.0 * (1.0 + 0.6)).epsilon(1e-9));
  CHECK(rough_boundary_length(dom) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(dom.seg_gamma.size() == dom.boundary.size() - 1);
  CHECK(dom.seg_rough.size() == dom.seg_gamma.size());

  Grid g = rasterize(dom, 128);
  double trace_sum = 0.0;
  for (double t : g.trace_weight) trace_sum += t;
  double expected = 0.3 * 1.0 + 0.999 * (2.0 * 0.6 + 1.0);
  CHECK(trace_sum == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("rough wall length approaches r * width") {
  Profile p = Profile::sinusoid(0.5);
  RoughDomain dom = make_channel(1.0, 0.6, p, 1.0 / 16.0, 0.3, 0.999, 64);
  CHECK(rough_boundary_length(dom) ==
        doctest::Approx(p.roughness()).epsilon(1e-2));
}

TEST_CASE("boundary polyline stays within eps of the base wall") {
  Profile p = Profile::sinusoid(0.5);
  double eps = 1.0 / 8.0;
  RoughDomain dom = make_channel(1.0, 0.6, p, eps, 0.3, 0.999, 64);
  double max_rough_y = 0.0;
  for (size_t i = 0; i + 1 < dom.boundary.size(); ++i)
    if (dom.seg_rough[i]) max_rough_y = std::max(max_rough_y, dom.boundary[i].y);
  CHECK(max_rough_y <= eps * p.max_height() + 1e-12);
  CHECK(max_rough_y >= eps * p.max_height() * 0.9);
}

TEST_CASE("epsilon must be a unit fraction") {
  Profile p = Profile::sinusoid(0.5);
  CHECK_THROWS_AS(make_channel(1.0, 0.6, p, 0.3, 0.3, 0.999), GeometryError);
}

TEST_CASE("resolution must resolve the roughness") {
  Profile p = Profile::sinusoid(0.5);
  RoughDomain dom = make_channel(1.0, 0.6, p, 1.0 / 16.0, 0.3, 0.999);
  CHECK_THROWS_AS(rasterize(dom, 32), GeometryError);  // spacing > eps/8
}

TEST_CASE("rasterization classes and fractions") {
  Profile p = Profile::sinusoid(0.5);
  RoughDomain dom = make_channel(1.0, 0.6, p, 0.25, 0.3, 0.999);
  Grid g = rasterize(dom, 64);
  REQUIRE(g.nx > 0);
  REQUIRE(g.ny > 0);
  int interior = 0, boundary = 0;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      size_t k = g.idx(i, j);
      CHECK(g.inside_fraction[k] >= 0.0);
      CHECK(g.inside_fraction[k] <= 1.0 + 1e-12);
      if (g.cell_class[k] == CellClass::Interior) {
        ++interior;
        CHECK(g.inside_fraction[k] == doctest::Approx(1.0).epsilon(1e-12));
      } else if (g.cell_class[k] == CellClass::Boundary) {
        ++boundary;
      }
    }
  }
  CHECK(interior > 0);
  CHECK(boundary > 0);

  // total inside area close to the analytic area of the displaced channel:
  // width * height minus the groove area eps * integral of zeta = eps*a/2
  double area = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) area += g.cell_area(i, j);
  double expected = 1.0 * 0.6 - 0.25 * 0.5 / 2.0;
  CHECK(area == doctest::Approx(expected).epsilon(1e-2));
  CHECK(area < 0.6);
}

TEST_CASE("point_inside agrees with the displaced wall") {
  Profile p = Profile::sinusoid(0.5);
  double eps = 0.25;
  RoughDomain dom = make_channel(1.0, 0.6, p, eps, 0.3, 0.999);
  for (int i = 0; i < 40; ++i) {
    double x = (i + 0.5) / 40.0;
    double wall = eps * p.eval(x / eps);
    CHECK(point_inside(dom, x, wall + 1e-6));
    if (wall > 1e-6) CHECK(!point_inside(dom, x, wall - 1e-6));
  }
  CHECK(!point_inside(dom, -0.01, 0.3));
  CHECK(!point_inside(dom, 0.5, 0.61));
}

TEST_CASE("stencil is a half set with positive weights") {
  for (int nb : {8, 16}) {
    auto st = perimeter_stencil(0.01, nb);
    CHECK(static_cast<int>(st.size()) == nb / 2);
    for (const auto& e : st) {
      CHECK(e.weight > 0.0);
      bool half = e.dx > 0 || (e.dx == 0 && e.dy > 0);
      CHECK(half);
    }
  }
  CHECK_THROWS_AS(perimeter_stencil(0.01, 6), GeometryError);
}

TEST_CASE("disk domain") {
  Profile p = Profile::flat();
  RoughDomain dom = make_disk(0.3, p, 1.0, 0.5);
  CHECK(boundary_length(dom) == doctest::Approx(2.0 * kPi * 0.3).epsilon(1e-4));
  CHECK(point_inside(dom, 0.3, 0.3));  // centered at (R, R)
  CHECK(!point_inside(dom, 0.61, 0.3));
}

}  // TEST_SUITE
