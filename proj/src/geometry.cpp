#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace wetlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_reciprocal(double epsilon) {
  if (!(epsilon > 0.0) || epsilon > 1.0)
    throw GeometryError("epsilon must equal 1/j for an integer j >= 1");
  const double j = 1.0 / epsilon;
  if (std::abs(j - std::round(j)) > 1e-9 * j)
    throw GeometryError("epsilon must equal 1/j for an integer j >= 1");
}

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c,
                        const Vec2& d) {
  const auto cross = [](const Vec2& o, const Vec2& p, const Vec2& q) {
    return (p.x - o.x) * (q.y - o.y) - (p.y - o.y) * (q.x - o.x);
  };
  const double d1 = cross(a, b, c), d2 = cross(a, b, d);
  const double d3 = cross(c, d, a), d4 = cross(c, d, b);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

void check_simple(const RoughDomain& dom) {
  const auto& b = dom.boundary;
  const size_t n = b.size();
  for (size_t i = 0; i + 1 < n; ++i) {
    double ilo = std::min(b[i].x, b[i + 1].x), ihi = std::max(b[i].x, b[i + 1].x);
    for (size_t j = i + 2; j + 1 < n; ++j) {
      if (i == 0 && j + 2 == n) continue;  // closing neighbor
      if (std::min(b[j].x, b[j + 1].x) > ihi ||
          std::max(b[j].x, b[j + 1].x) < ilo)
        continue;
      if (segments_intersect(b[i], b[i + 1], b[j], b[j + 1]))
        throw GeometryError(
            "rough boundary self-intersects (epsilon too large for the base)");
    }
  }
}

}  // namespace

void build_rough_boundary(RoughDomain& dom, int samples_per_period) {
  const Profile& p = *dom.profile;
  const int spp = std::max(samples_per_period, 64);
  dom.boundary.clear();
  dom.seg_gamma.clear();
  dom.seg_rough.clear();
  if (dom.base == BaseKind::Channel) {
    const double periods = dom.width / dom.epsilon;
    if (std::abs(periods - std::round(periods)) > 1e-9)
      throw GeometryError(
          "channel width must be an integer multiple of epsilon");
    if (dom.epsilon * p.max_height() >= dom.height)
      throw GeometryError("roughness amplitude exceeds channel height");
    const int nseg = int(std::round(periods)) * spp;
    // Bottom wall, displaced inward: y = eps * zeta(x / eps).
    for (int k = 0; k <= nseg; ++k) {
      const double x = dom.width * k / nseg;
      dom.boundary.push_back({x, dom.epsilon * p.eval(x / dom.epsilon)});
      if (k < nseg) {
        dom.seg_gamma.push_back(dom.gamma);
        dom.seg_rough.push_back(true);
      }
    }
    const Vec2 corners[] = {{dom.width, dom.height}, {0.0, dom.height}};
    for (const Vec2& c : corners) {
      dom.boundary.push_back(c);
      dom.seg_gamma.push_back(dom.gamma_other);
      dom.seg_rough.push_back(false);
    }
    dom.boundary.push_back(dom.boundary.front());  // close via left wall
    dom.seg_gamma.push_back(dom.gamma_other);
    dom.seg_rough.push_back(false);
  } else {
    const double L = 2.0 * kPi * dom.radius;
    const double periods = L / dom.epsilon;
    if (!p.is_flat() && std::abs(periods - std::round(periods)) > 1e-6)
      throw GeometryError(
          "disk perimeter must be an integer multiple of epsilon");
    const int nseg =
        std::max(256, int(std::round(std::max(periods, 1.0))) * spp);
    for (int k = 0; k <= nseg; ++k) {
      const double th = 2.0 * kPi * k / nseg;
      const double s = dom.radius * th;  // arc length
      const double r = dom.radius - dom.epsilon * p.eval(s / dom.epsilon);
      dom.boundary.push_back({dom.radius + r * std::cos(th),
                              dom.radius + r * std::sin(th)});
      if (k < nseg) {
        dom.seg_gamma.push_back(dom.gamma);
        dom.seg_rough.push_back(true);
      }
    }
  }
  check_simple(dom);
}

RoughDomain make_channel(double width, double height, const Profile& p,
                         double epsilon, double gamma, double gamma_other,
                         int samples_per_period) {
  require_reciprocal(epsilon);
  RoughDomain dom;
  dom.base = BaseKind::Channel;
  dom.width = width;
  dom.height = height;
  dom.profile = &p;
  dom.epsilon = epsilon;
  dom.gamma = gamma;
  dom.gamma_other = gamma_other;
  build_rough_boundary(dom, samples_per_period);
  return dom;
}

RoughDomain make_disk(double radius, const Profile& p, double epsilon,
                      double gamma, int samples_per_period) {
  require_reciprocal(epsilon);
  RoughDomain dom;
  dom.base = BaseKind::Disk;
  dom.radius = radius;
  dom.profile = &p;
  dom.epsilon = epsilon;
  dom.gamma = gamma;
  build_rough_boundary(dom, samples_per_period);
  return dom;
}

bool point_inside(const RoughDomain& dom, double x, double y) {
  const Profile& p = *dom.profile;
  if (dom.base == BaseKind::Channel) {
    if (x < 0.0 || x > dom.width || y > dom.height) return false;
    return y >= dom.epsilon * p.eval(x / dom.epsilon);
  }
  const double dx = x - dom.radius, dy = y - dom.radius;
  const double rr = std::hypot(dx, dy);
  const double s = dom.radius * std::atan2(dy, dx);
  return rr <= dom.radius - dom.epsilon * p.eval(s / dom.epsilon);
}

double boundary_length(const RoughDomain& dom) {
  double L = 0.0;
  for (size_t i = 0; i + 1 < dom.boundary.size(); ++i)
    L += std::hypot(dom.boundary[i + 1].x - dom.boundary[i].x,
                    dom.boundary[i + 1].y - dom.boundary[i].y);
  return L;
}

double rough_boundary_length(const RoughDomain& dom) {
  double L = 0.0;
  for (size_t i = 0; i + 1 < dom.boundary.size(); ++i)
    if (dom.seg_rough[i])
      L += std::hypot(dom.boundary[i + 1].x - dom.boundary[i].x,
                      dom.boundary[i + 1].y - dom.boundary[i].y);
  return L;
}

Grid rasterize(const RoughDomain& dom, int n_cells_per_unit) {
  if (n_cells_per_unit < 1) throw GeometryError("resolution must be positive");
  const double sp = 1.0 / n_cells_per_unit;
  if (!dom.profile->is_flat() && sp > dom.epsilon / 8.0 + 1e-12) {
    const int need = int(std::ceil(8.0 / dom.epsilon));
    throw GeometryError("resolution too coarse for epsilon; need at least " +
                        std::to_string(need) + " cells per unit");
  }
  const double W =
      dom.base == BaseKind::Channel ? dom.width : 2.0 * dom.radius;
  const double H =
      dom.base == BaseKind::Channel ? dom.height : 2.0 * dom.radius;
  Grid g;
  g.spacing = sp;
  g.nx = int(std::round(W / sp)) + 1;
  g.ny = int(std::round(H / sp)) + 1;
  const size_t ncells = size_t(g.nx) * g.ny;
  g.inside_fraction.assign(ncells, 0.0);
  g.cell_class.assign(ncells, CellClass::Exterior);
  g.trace_weight.assign(ncells, 0.0);
  g.rough_trace_length.assign(ncells, 0.0);

  static const double off[4] = {-0.375, -0.125, 0.125, 0.375};
  for (int j = 0; j < g.ny; ++j) {
    const double cy = j * sp;
    for (int i = 0; i < g.nx; ++i) {
      const double cx = i * sp;
      int hits = 0;
      for (double oy : off)
        for (double ox : off)
          hits += point_inside(dom, cx + ox * sp, cy + oy * sp) ? 1 : 0;
      const size_t k = g.idx(i, j);
      g.inside_fraction[k] = hits / 16.0;
      g.cell_class[k] = hits == 16  ? CellClass::Interior
                        : hits == 0 ? CellClass::Exterior
                                    : CellClass::Boundary;
    }
  }

  // Clip each wall segment to the cell lattice; cell faces sit at
  // half-integer multiples of the spacing.
  for (size_t seg = 0; seg + 1 < dom.boundary.size(); ++seg) {
    const Vec2 a = dom.boundary[seg], b = dom.boundary[seg + 1];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    if (len == 0.0) continue;
    // Collect parametric crossings with vertical and horizontal faces.
    std::vector<double> ts = {0.0, 1.0};
    for (int axis = 0; axis < 2; ++axis) {
      const double pa = axis ? a.y : a.x, pb = axis ? b.y : b.x;
      if (pa == pb) continue;
      const double lo = std::min(pa, pb), hi = std::max(pa, pb);
      for (int m = int(std::floor(lo / sp - 0.5)) + 1;; ++m) {
        const double plane = (m + 0.5) * sp;
        if (plane >= hi) break;
        if (plane > lo) ts.push_back((plane - pa) / (pb - pa));
      }
    }
    std::sort(ts.begin(), ts.end());
    for (size_t t = 0; t + 1 < ts.size(); ++t) {
      if (ts[t + 1] - ts[t] < 1e-15) continue;
      const double tm = 0.5 * (ts[t] + ts[t + 1]);
      const double mx = a.x + tm * (b.x - a.x), my = a.y + tm * (b.y - a.y);
      const int ci = std::clamp(int(std::round(mx / sp)), 0, g.nx - 1);
      const int cj = std::clamp(int(std::round(my / sp)), 0, g.ny - 1);
      const double piece = len * (ts[t + 1] - ts[t]);
      const size_t k = g.idx(ci, cj);
      g.trace_weight[k] += dom.seg_gamma[seg] * piece;
      if (dom.seg_rough[seg]) g.rough_trace_length[k] += piece;
      if (g.cell_class[k] == CellClass::Exterior)
        g.cell_class[k] = CellClass::Boundary;
    }
  }
  return g;
}

std::vector<StencilEntry> perimeter_stencil(double spacing, int neighborhood) {
  const double sp = spacing;
  if (neighborhood == 8) {
    const double wa = sp * kPi / 8.0;
    const double wd = sp * kPi / (8.0 * std::sqrt(2.0));
    return {{1, 0, wa}, {0, 1, wa}, {1, 1, wd}, {1, -1, wd}};
  }
  if (neighborhood != 16)
    throw GeometryError("neighborhood must be 8 or 16");
  // Angular windows: directions 0, atan(1/2), pi/4, atan(2), pi/2, ...;
  // each direction owns half the gap to its neighbors.
  const double a12 = std::atan(0.5);
  const double dphi_axis = a12;                          // (1,0), (0,1)
  const double dphi_knight = kPi / 8.0;                  // (2,1) family
  const double dphi_diag = (std::atan(2.0) - a12) / 2.0;  // (1,1) family
  const double w_axis = sp * dphi_axis / 2.0;
  const double w_diag = sp * dphi_diag / (2.0 * std::sqrt(2.0));
  const double w_knight = sp * dphi_knight / (2.0 * std::sqrt(5.0));
  return {{1, 0, w_axis},    {0, 1, w_axis},   {1, 1, w_diag},
          {1, -1, w_diag},   {2, 1, w_knight}, {1, 2, w_knight},
          {2, -1, w_knight}, {1, -2, w_knight}};
}

}  // namespace wetlab
