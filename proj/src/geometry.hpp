#pragma once

#include <vector>

#include "profile.hpp"

namespace wetlab {

enum class BaseKind { Channel, Disk };

struct Vec2 {
  double x = 0.0, y = 0.0;
};

// Rough domain Omega_eps: the base domain with its boundary displaced inward
// by eps * zeta(s/eps) along the outward normal. For a Channel only the
// bottom wall is rough; a Disk is rough all around.
struct RoughDomain {
  BaseKind base = BaseKind::Channel;
  double width = 1.0, height = 1.0;  // Channel
  double radius = 1.0;               // Disk
  const Profile* profile = nullptr;
  double epsilon = 1.0;
  double gamma = 0.0;        // rough-wall interaction
  double gamma_other = 0.0;  // remaining walls (Channel only)
  // Closed polyline with one gamma value per segment [i, i+1).
  std::vector<Vec2> boundary;
  std::vector<double> seg_gamma;
  std::vector<bool> seg_rough;  // marks rough-wall segments
};

enum class CellClass : unsigned char { Exterior, Boundary, Interior };

// Cells are squares of side `spacing` centered at (i*spacing, j*spacing),
// so straight base walls pass through cell centers.
struct Grid {
  int nx = 0, ny = 0;
  double spacing = 0.0;
  std::vector<double> inside_fraction;  // area fraction inside Omega_eps
  std::vector<CellClass> cell_class;
  std::vector<double> trace_weight;        // gamma * wall length in the cell
  std::vector<double> rough_trace_length;  // rough-wall length in the cell

  size_t idx(int i, int j) const { return size_t(j) * nx + i; }
  double cell_area(int i, int j) const {
    return inside_fraction[idx(i, j)] * spacing * spacing;
  }
};

struct StencilEntry {
  int dx, dy;
  double weight;
};

// Channel(width, height) with rough bottom wall, or Disk(radius).
RoughDomain make_channel(double width, double height, const Profile& p,
                         double epsilon, double gamma, double gamma_other,
                         int samples_per_period = 64);
RoughDomain make_disk(double radius, const Profile& p, double epsilon,
                      double gamma, int samples_per_period = 64);

// Polyline sampling of the displaced boundary; >= samples_per_period points
// per roughness period, checked simple by segment sweep.
void build_rough_boundary(RoughDomain& dom, int samples_per_period);

// Rasterization at n_cells_per_unit; requires spacing <= eps/8.
Grid rasterize(const RoughDomain& dom, int n_cells_per_unit);

// Cauchy-Crofton perimeter stencil (half set of offsets; each unordered
// neighbor pair appears once). neighborhood is 16 or 8.
std::vector<StencilEntry> perimeter_stencil(double spacing,
                                            int neighborhood = 16);

// Total polyline length and the rough-wall part.
double boundary_length(const RoughDomain& dom);
double rough_boundary_length(const RoughDomain& dom);

// Analytic inside test for the displaced domain.
bool point_inside(const RoughDomain& dom, double x, double y);

}  // namespace wetlab
