#include "solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"
#include "maxflow.hpp"

namespace wetlab {

namespace {

bool occupiable(const Grid& g, int i, int j) {
  return g.cell_class[g.idx(i, j)] != CellClass::Exterior;
}

double flip_delta(const DropletField& f,
                  const std::vector<StencilEntry>& stencil, int i, int j) {
  const Grid& g = *f.grid;
  const size_t k = g.idx(i, j);
  const double sign = f.occupancy[k] ? -1.0 : 1.0;
  double d = sign * g.trace_weight[k];
  for (const auto& st : stencil)
    for (int dir = -1; dir <= 1; dir += 2) {
      const int ni = i + dir * st.dx, nj = j + dir * st.dy;
      if (ni < 0 || ni >= g.nx || nj < 0 || nj >= g.ny) continue;
      if (!occupiable(g, ni, nj)) continue;
      const double other = f.occupancy[g.idx(ni, nj)];
      const double before = std::abs(double(f.occupancy[k]) - other);
      const double after = std::abs(1.0 - double(f.occupancy[k]) - other);
      d += st.weight * (after - before);
    }
  return d;
}

}  // namespace

double DropletField::volume() const {
  const Grid& g = *grid;
  double v = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      if (occupancy[g.idx(i, j)]) v += g.cell_area(i, j);
  return v;
}

double relaxed_perimeter(const Grid& g,
                         const std::vector<StencilEntry>& stencil,
                         const std::vector<double>& phi) {
  double per = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (!occupiable(g, i, j)) continue;
      const double v = phi[g.idx(i, j)];
      for (const auto& st : stencil) {
        const int ni = i + st.dx, nj = j + st.dy;
        if (ni < 0 || ni >= g.nx || nj < 0 || nj >= g.ny) continue;
        if (!occupiable(g, ni, nj)) continue;
        per += st.weight * std::abs(v - phi[g.idx(ni, nj)]);
      }
    }
  return per;
}

EnergyReport discrete_energy(const DropletField& field,
                             const std::vector<StencilEntry>& stencil) {
  const Grid& g = *field.grid;
  EnergyReport rep;
  std::vector<double> phi(field.occupancy.begin(), field.occupancy.end());
  rep.perimeter_term = relaxed_perimeter(g, stencil, phi);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const size_t k = g.idx(i, j);
      if (!field.occupancy[k]) continue;
      rep.trace_term += g.trace_weight[k];
      if (g.trace_weight[k] > 0.0 && g.rough_trace_length[k] == 0.0)
        rep.touches_other_walls = true;
    }
  rep.total = rep.perimeter_term + rep.trace_term;
  rep.achieved_volume = field.volume();
  return rep;
}

DropletField min_cut_solve_restricted(const Grid& g,
                                      const std::vector<StencilEntry>& stencil,
                                      double lambda,
                                      const std::vector<signed char>& forced) {
  if (!std::isfinite(lambda)) throw ConstraintError("lambda must be finite");
  // Compact ids for free occupiable cells.
  std::vector<int> id(size_t(g.nx) * g.ny, -1);
  int n = 0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const size_t k = g.idx(i, j);
      if (occupiable(g, i, j) && forced[k] < 0) id[k] = n++;
    }

  MaxFlow mf(n);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const size_t k = g.idx(i, j);
      if (id[k] < 0) continue;
      double unary = g.trace_weight[k] - lambda * g.cell_area(i, j);
      for (const auto& st : stencil) {
        for (int dir = -1; dir <= 1; dir += 2) {
          const int ni = i + dir * st.dx, nj = j + dir * st.dy;
          if (ni < 0 || ni >= g.nx || nj < 0 || nj >= g.ny) continue;
          const size_t nk = g.idx(ni, nj);
          if (!occupiable(g, ni, nj)) continue;
          if (id[nk] >= 0) {
            if (dir > 0) {
              mf.add_arc(id[k], id[nk], st.weight);
              mf.add_arc(id[nk], id[k], st.weight);
            }
          } else {
            // Pinned neighbor folds into the unary term.
            unary += forced[nk] ? -st.weight : st.weight;
          }
        }
      }
      mf.add_terminal(id[k], std::max(0.0, -unary), std::max(0.0, unary));
    }
  mf.solve();

  DropletField f;
  f.grid = &g;
  f.occupancy.assign(size_t(g.nx) * g.ny, 0);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const size_t k = g.idx(i, j);
      if (!occupiable(g, i, j)) continue;
      if (id[k] >= 0)
        f.occupancy[k] = mf.source_side(id[k]) ? 1 : 0;
      else
        f.occupancy[k] = forced[k] ? 1 : 0;
    }
  return f;
}

DropletField min_cut_solve(const Grid& g,
                           const std::vector<StencilEntry>& stencil,
                           double lambda) {
  std::vector<signed char> forced(size_t(g.nx) * g.ny, -1);
  return min_cut_solve_restricted(g, stencil, lambda, forced);
}

namespace {

// Pin everything farther than `band` cells (8-neighbor distance) from the
// current liquid/vapor interface; leave the band itself free.
std::vector<signed char> band_constraints(const Grid& g,
                                          const std::vector<uint8_t>& occ,
                                          int band) {
  const size_t n = size_t(g.nx) * g.ny;
  std::vector<int> dist(n, -1);
  std::vector<size_t> queue;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const size_t k = g.idx(i, j);
      if (!occupiable(g, i, j)) continue;
      const int d4[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
      for (const auto& d : d4) {
        const int ni = i + d[0], nj = j + d[1];
        if (ni < 0 || ni >= g.nx || nj < 0 || nj >= g.ny) continue;
        if (occupiable(g, ni, nj) && occ[g.idx(ni, nj)] != occ[k]) {
          dist[k] = 0;
          queue.push_back(k);
          break;
        }
      }
    }
  for (size_t head = 0; head < queue.size(); ++head) {
    const size_t k = queue[head];
    if (dist[k] >= band) continue;
    const int i = int(k % g.nx), j = int(k / g.nx);
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di) {
        const int ni = i + di, nj = j + dj;
        if (ni < 0 || ni >= g.nx || nj < 0 || nj >= g.ny) continue;
        const size_t nk = g.idx(ni, nj);
        if (!occupiable(g, ni, nj) || dist[nk] >= 0) continue;
        dist[nk] = dist[k] + 1;
        queue.push_back(nk);
      }
  }
  std::vector<signed char> forced(n, 0);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const size_t k = g.idx(i, j);
      if (!occupiable(g, i, j)) continue;
      forced[k] = dist[k] >= 0 ? -1 : (occ[k] ? 1 : 0);
    }
  return forced;
}

}  // namespace

DropletField make_cap_field(const Grid& g, double q, double theta) {
  const double sp = g.spacing;
  DropletField f;
  f.grid = &g;
  f.occupancy.assign(size_t(g.nx) * g.ny, 0);
  const double cx0 = 0.5 * (g.nx - 1) * sp;
  double wall_y = 0.0;
  const int imid = g.nx / 2;
  for (int j = 0; j < g.ny; ++j)
    if (g.inside_fraction[g.idx(imid, j)] >= 0.5) {
      wall_y = j * sp;
      break;
    }
  const double area = theta - std::sin(theta) * std::cos(theta);
  const double r0 = std::sqrt(q / std::max(area, 1e-9));
  const double cy0 = wall_y - r0 * std::cos(theta);
  double placed = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (!occupiable(g, i, j)) continue;
      if (std::hypot(i * sp - cx0, j * sp - cy0) <= r0) {
        f.occupancy[g.idx(i, j)] = 1;
        placed += g.cell_area(i, j);
      }
    }
  // Thin domains (or q near the available area) can starve the cap; fall
  // back to filling from the bottom up.
  for (int j = 0; j < g.ny && placed < q; ++j)
    for (int i = 0; i < g.nx && placed < q; ++i) {
      const size_t k = g.idx(i, j);
      if (occupiable(g, i, j) && !f.occupancy[k]) {
        f.occupancy[k] = 1;
        placed += g.cell_area(i, j);
      }
    }
  return f;
}

std::pair<DropletField, EnergyReport> minimize_with_volume(
    const Grid& g, const std::vector<StencilEntry>& stencil, double q,
    double volume_slack, bool repair, const DropletField* seed) {
  double avail = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      if (occupiable(g, i, j)) avail += g.cell_area(i, j);
  if (!(q > 0.0) || q >= avail)
    throw ConstraintError("prescribed volume outside (0, available area)");

  // The constrained energy is concave in the volume, so a single global
  // Lagrangian cut jumps from the empty set straight to a filled domain and
  // never realizes intermediate volumes.  Instead: seed a droplet of area
  // about q on the bottom wall, then alternate a lambda bisection restricted
  // to a band around the current interface with re-centering of the band,
  // until the set stops changing.
  const double sp = g.spacing;
  DropletField best;
  if (seed && !seed->occupancy.empty()) {
    best.grid = &g;
    best.occupancy.assign(size_t(g.nx) * g.ny, 0);
    double placed = 0.0;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const size_t k = g.idx(i, j);
        if (occupiable(g, i, j) && seed->occupancy[k]) {
          best.occupancy[k] = 1;
          placed += g.cell_area(i, j);
        }
      }
    if (placed <= 0.0)
      best = make_cap_field(g, q, 0.5 * 3.14159265358979323846);
  } else {
    best = make_cap_field(g, q, 0.5 * 3.14159265358979323846);
  }

  // Even inside the band the cut jumps past q: a droplet of exactly volume
  // q is a maximum of F - lambda*V along the shape family, never a cut
  // minimizer.  So the bisection serves as a shape relaxer: it yields
  // shape-optimized sets bracketing q from below and above, one band shell
  // apart.  The iteration settles into a two-cycle between those brackets;
  // detect it, keep the bracket closer to q, and close the remaining
  // sub-shell volume gap by greedy interface moves afterwards.
  const int band = 2;
  double best_lambda = 1.0 / std::sqrt(2.0 * q / 3.14159265358979323846);
  double gap_bound = 0.0;
  DropletField prev;
  for (int outer = 0; outer < 200; ++outer) {
    const auto forced = band_constraints(g, best.occupancy, band);
    const auto probe = [&](double lam) {
      DropletField f = min_cut_solve_restricted(g, stencil, lam, forced);
      const double v = f.volume();
      return std::make_pair(std::move(f), v);
    };

    double lo = 0.0;
    auto [f_lo, v_lo] = probe(lo);
    double hi = std::max(best_lambda * 2.0, 1.0);
    auto [f_hi, v_hi] = probe(hi);
    // Filling every free cell becomes optimal once lambda beats the single
    // cell isoperimetric ratio ~4/spacing; past that the band is saturated.
    const double lam_cap = 64.0 / sp;
    for (int w = 0; w < 60 && v_hi < q && hi < lam_cap; ++w) {
      hi *= 2.0;
      std::tie(f_hi, v_hi) = probe(hi);
    }

    DropletField cand;
    double cand_lambda = best_lambda;
    if (v_lo >= q) {
      cand = std::move(f_lo);  // shrink toward q over the outer iterations
      gap_bound = 0.0;
    } else if (v_hi <= q) {
      cand = std::move(f_hi);  // band capacity below q; grow outward
      gap_bound = 0.0;
    } else {
      // Tighten the jump bracket; lambda converges to the tie value.
      for (int it = 0; it < 40 && hi - lo > 1e-9 * (1.0 + hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        auto [f_mid, v_mid] = probe(mid);
        if (v_mid < q) {
          lo = mid;
          f_lo = std::move(f_mid);
          v_lo = v_mid;
        } else {
          hi = mid;
          f_hi = std::move(f_mid);
          v_hi = v_mid;
        }
      }
      const bool take_hi = v_hi - q <= q - v_lo;
      gap_bound = std::abs(discrete_energy(f_hi, stencil).total -
                           discrete_energy(f_lo, stencil).total);
      cand = take_hi ? std::move(f_hi) : std::move(f_lo);
      cand_lambda = 0.5 * (lo + hi);
    }

    const bool settled = cand.occupancy == best.occupancy;
    const bool cycled = outer > 0 && cand.occupancy == prev.occupancy;
    if (cycled) {
      // Two-cycle between the brackets: keep the one closer to q.
      if (std::abs(best.volume() - q) < std::abs(cand.volume() - q)) break;
    }
    prev = std::move(best);
    best = std::move(cand);
    best_lambda = cand_lambda;
    if (settled || cycled) break;
  }

  {
    // Greedy one-cell moves toward the prescribed volume: stop inside the
    // slack, or (with repair) when one more move would not reduce |vol - q|.
    double vol = best.volume();
    for (int round = 0; round < 1 << 20; ++round) {
      if (!repair && std::abs(vol - q) <= volume_slack * q) break;
      const bool add = vol < q;
      double best_d = std::numeric_limits<double>::infinity();
      int bi = -1, bj = -1;
      for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
          const size_t k = g.idx(i, j);
          if (!occupiable(g, i, j) || bool(best.occupancy[k]) == add)
            continue;
          if (g.cell_area(i, j) <= 0.0) continue;
          // Only cells on the droplet's boundary layer.
          bool frontier = false;
          const int d4[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
          for (const auto& d : d4) {
            const int ni = i + d[0], nj = j + d[1];
            if (ni < 0 || ni >= g.nx || nj < 0 || nj >= g.ny) continue;
            if (occupiable(g, ni, nj) &&
                bool(best.occupancy[g.idx(ni, nj)]) == add)
              frontier = true;
          }
          if (!frontier) continue;
          const double d = flip_delta(best, stencil, i, j);
          if (d < best_d) {
            best_d = d;
            bi = i;
            bj = j;
          }
        }
      if (bi < 0) break;
      const double da = g.cell_area(bi, bj);
      const double next = add ? vol + da : vol - da;
      if (std::abs(next - q) >= std::abs(vol - q)) break;
      best.occupancy[g.idx(bi, bj)] = add ? 1 : 0;
      vol = next;
    }
  }

  EnergyReport rep = discrete_energy(best, stencil);
  rep.lambda = best_lambda;
  rep.gap_bound = gap_bound;
  // Bookkeeping identity: cut = F - lambda*V - sum of negative unaries.
  double neg = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      if (occupiable(g, i, j))
        neg += std::min(0.0, g.trace_weight[g.idx(i, j)] -
                                 best_lambda * g.cell_area(i, j));
  rep.cut_value = rep.total - best_lambda * rep.achieved_volume - neg;
  return {std::move(best), rep};
}

DropletField refine_against(const Grid& g,
                            const std::vector<StencilEntry>& stencil,
                            double lambda, const DropletField& current,
                            const DropletField& competitor) {
  // Free region: a band around both interfaces plus everywhere the two sets
  // disagree.  Both candidates are feasible there, so the restricted global
  // minimizer beats both in F - lambda*V.
  const size_t n = size_t(g.nx) * g.ny;
  std::vector<uint8_t> inter(n, 0), uni(n, 0);
  for (size_t k = 0; k < n; ++k) {
    inter[k] = current.occupancy[k] & competitor.occupancy[k];
    uni[k] = current.occupancy[k] | competitor.occupancy[k];
  }
  const auto f_in = band_constraints(g, inter, 4);
  const auto f_un = band_constraints(g, uni, 4);
  std::vector<signed char> forced(n, 0);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const size_t k = g.idx(i, j);
      if (!occupiable(g, i, j)) continue;
      if (f_in[k] == 1)
        forced[k] = 1;  // deep inside both sets
      else if (f_un[k] == 0)
        forced[k] = 0;  // far outside both sets
      else
        forced[k] = -1;
    }
  return min_cut_solve_restricted(g, stencil, lambda, forced);
}

AngleMeasurement measure_apparent_angle(const DropletField& field,
                                        const RoughDomain& dom) {
  const Grid& g = *field.grid;
  const double sp = g.spacing;

  bool contact = false;
  for (size_t k = 0; k < field.occupancy.size() && !contact; ++k)
    contact = field.occupancy[k] && g.rough_trace_length[k] > 0.0;
  if (!contact) throw MeasurementError("no wall contact");

  const double eps_eff = dom.profile->is_flat() ? 0.0 : dom.epsilon;
  const double y_min = 2.0 * eps_eff + 2.0 * sp;
  const double W = dom.base == BaseKind::Channel ? dom.width : 2 * dom.radius;
  const double H = dom.base == BaseKind::Channel ? dom.height : 2 * dom.radius;

  std::vector<double> xs, ys;
  const auto occ = [&](int i, int j) {
    return occupiable(g, i, j) && field.occupancy[g.idx(i, j)];
  };
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (!occupiable(g, i, j)) continue;
      const int d2[2][2] = {{1, 0}, {0, 1}};
      for (const auto& d : d2) {
        const int ni = i + d[0], nj = j + d[1];
        if (ni >= g.nx || nj >= g.ny || !occupiable(g, ni, nj)) continue;
        if (occ(i, j) == occ(ni, nj)) continue;
        const double mx = (i + 0.5 * d[0]) * sp;
        const double my = (j + 0.5 * d[1]) * sp;
        if (my < y_min || my > H - 3 * sp) continue;
        if (mx < 3 * sp || mx > W - 3 * sp) continue;
        xs.push_back(mx);
        ys.push_back(my);
      }
    }
  if (xs.size() < 5) throw MeasurementError("no usable interface points");

  // Kasa fit: x^2 + y^2 + D x + E y + F = 0, linear least squares.
  double sxx = 0, sxy = 0, syy = 0, sx = 0, sy = 0, sxz = 0, syz = 0, sz = 0;
  const size_t m = xs.size();
  for (size_t k = 0; k < m; ++k) {
    const double x = xs[k], y = ys[k], z = -(x * x + y * y);
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    sx += x;
    sy += y;
    sxz += x * z;
    syz += y * z;
    sz += z;
  }
  // Solve [sxx sxy sx; sxy syy sy; sx sy m] [D E F]^T = [sxz syz sz]^T.
  double A[3][4] = {{sxx, sxy, sx, sxz},
                    {sxy, syy, sy, syz},
                    {sx, sy, double(m), sz}};
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
    std::swap(A[c], A[piv]);
    if (std::abs(A[c][c]) < 1e-14)
      throw MeasurementError("degenerate interface (circle fit failed)");
    for (int r = 0; r < 3; ++r) {
      if (r == c) continue;
      const double f = A[r][c] / A[c][c];
      for (int cc = c; cc < 4; ++cc) A[r][cc] -= f * A[c][cc];
    }
  }
  const double D = A[0][3] / A[0][0], E = A[1][3] / A[1][1],
               F = A[2][3] / A[2][2];
  const double cx = -D / 2.0, cy = -E / 2.0;
  const double R2 = cx * cx + cy * cy - F;
  if (R2 <= 0.0) throw MeasurementError("degenerate interface (circle fit failed)");
  const double R = std::sqrt(R2);

  AngleMeasurement out;
  out.n_points = int(m);
  double ss = 0.0;
  for (size_t k = 0; k < m; ++k) {
    const double r = std::hypot(xs[k] - cx, ys[k] - cy) - R;
    ss += r * r;
  }
  out.residual = std::sqrt(ss / m);
  if (std::abs(cy) > R + 3 * sp)
    throw MeasurementError("interface does not meet the wall");
  out.theta = std::acos(std::clamp(-cy / R, -1.0, 1.0));
  return out;
}

}  // namespace wetlab
