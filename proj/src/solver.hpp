#pragma once

#include <cstdint>
#include <vector>

#include "geometry.hpp"

namespace wetlab {

struct DropletField {
  const Grid* grid = nullptr;
  std::vector<std::uint8_t> occupancy;  // 1 = liquid; 0 on Exterior cells

  double volume() const;
};

struct EnergyReport {
  double perimeter_term = 0.0;
  double trace_term = 0.0;
  double total = 0.0;
  double lambda = 0.0;
  double achieved_volume = 0.0;
  double cut_value = 0.0;
  double gap_bound = 0.0;  // energy gap between the bracketing solutions
  bool touches_other_walls = false;
};

struct AngleMeasurement {
  double theta = 0.0;     // radians
  double residual = 0.0;  // rms circle-fit residual
  int n_points = 0;
};

// F_gamma(E) = perimeter (stencil sum over occupiable cell pairs) + trace
// (sum of per-cell wall weights over occupied cells).
EnergyReport discrete_energy(const DropletField& field,
                             const std::vector<StencilEntry>& stencil);

// Global minimizer of F_gamma(E) - lambda * vol(E) by minimum s-t cut.
// Deterministic: among optima, returns the one with minimal liquid set.
DropletField min_cut_solve(const Grid& grid,
                           const std::vector<StencilEntry>& stencil,
                           double lambda);

// Same cut with per-cell constraints: forced[k] = 0 or 1 pins a cell,
// -1 leaves it free. Pinned-cell unary/pairwise costs are accounted for.
DropletField min_cut_solve_restricted(const Grid& grid,
                                      const std::vector<StencilEntry>& stencil,
                                      double lambda,
                                      const std::vector<signed char>& forced);

// Volume-constrained minimization. The energy at fixed volume is concave
// in the volume, so a plain Lagrangian cut jumps from the empty set to the
// filled domain and never realizes intermediate volumes. Instead: seed an
// analytic cap of area q, then alternate (i) a lambda bisection restricted
// to a band around the current interface (interior pinned liquid, far
// field pinned vapor) and (ii) re-centering the band, until the set is a
// fixed point. Stops at |vol - q| <= volume_slack * q; optional greedy
// one-cell repair toward exact volume afterwards.
std::pair<DropletField, EnergyReport> minimize_with_volume(
    const Grid& grid, const std::vector<StencilEntry>& stencil, double q,
    double volume_slack = 0.005, bool repair = false,
    const DropletField* seed = nullptr);

// Circular cap of volume q meeting the bottom wall at angle theta, centered
// mid-wall: the default relaxation seed (theta = pi/2) and a building block
// for callers that know the expected angle.
DropletField make_cap_field(const Grid& grid, double q, double theta);

// One restricted competition solve seeded by the union band of two
// candidate sets at the given lambda; returns the better set. Used to make
// energy comparisons against constructed competitors exact.
DropletField refine_against(const Grid& grid,
                            const std::vector<StencilEntry>& stencil,
                            double lambda, const DropletField& current,
                            const DropletField& competitor);

// Apparent contact angle against the base wall: marching-squares interface
// midpoints away from all walls, least-squares circle fit, intersection
// with the wall midline.
AngleMeasurement measure_apparent_angle(const DropletField& field,
                                        const RoughDomain& dom);

// Stencil perimeter of a relaxed per-cell field (used by coarea checks).
double relaxed_perimeter(const Grid& grid,
                         const std::vector<StencilEntry>& stencil,
                         const std::vector<double>& phi);

}  // namespace wetlab
