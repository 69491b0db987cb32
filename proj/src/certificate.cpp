#include "certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace wetlab {

namespace {

constexpr double kPiHalf = 1.57079632679489661923;
constexpr double kExplicitSlack = 1e-12;
constexpr double kSigmaBetaSlack = 1e-9;

// Integrand of int 1/h dy after the change of variable y = zeta(s):
// |zeta'(u)| / u. Bounded at u = 0 for profiles with vanishing end slope.
double depth_integrand(const Profile& p, double u) {
  const double uu = std::max(u, 1e-9);
  return std::abs(p.slope_half(uu)) / uu;
}

void require_end_slopes(const Profile& p) {
  if (p.kind() == ProfileKind::Triangle)
    throw InvalidProfileError("profile violates end-slope hypothesis");
  if (p.kind() == ProfileKind::Tabulated &&
      (std::abs(p.slope_half(0.0)) > 1e-6 ||
       std::abs(p.slope_half(0.5)) > 1e-6))
    throw InvalidProfileError("profile violates end-slope hypothesis");
}

CertificateResult vacuous_result(CertMethod method, double Y) {
  CertificateResult res;
  res.verdict = Verdict::Certified;
  res.method = method;
  res.y1 = Y;
  res.worst_margin = 0.0;
  res.witness_y = Y;
  res.vacuous = true;
  return res;
}

void track(double margin, double y, double& worst, double& witness) {
  if (margin < worst) {
    worst = margin;
    witness = y;
  }
}

}  // namespace

double weighted_depth(const Profile& p, double y0, double y) {
  if (y < y0 - 1e-12) throw DomainError("weighted_depth: y < y0");
  const double s_hi = p.inverse_height(y0);
  const double s_lo = p.inverse_height(std::min(y, p.max_height()));
  if (s_lo >= s_hi) return 0.0;
  return integrate([&](double u) { return depth_integrand(p, u); }, s_lo,
                   s_hi, 1e-10);
}

double compute_y1(const Profile& p, double y0) {
  const double Y = p.max_height();
  if (y0 >= Y) return Y;
  const double s0 = p.inverse_height(y0);
  const double total = weighted_depth(p, y0, Y);
  if (total <= 1.0) return Y;
  const double s1 = bisect(
      [&](double s) {
        return integrate([&](double u) { return depth_integrand(p, u); }, s,
                         s0, 1e-10) -
               1.0;
      },
      0.0, s0, 1e-13);
  return p.eval(s1);
}

CertificateResult certify_explicit(const Profile& p, double gamma, double y0) {
  const double Y = p.max_height();
  if (p.is_flat() || y0 >= Y - 1e-15)
    return vacuous_result(CertMethod::ExplicitLemma, Y);
  require_end_slopes(p);

  CertificateResult res;
  res.method = CertMethod::ExplicitLemma;
  res.y1 = compute_y1(p, y0);
  const double s0 = p.inverse_height(y0);
  const double s1 = res.y1 >= Y ? 0.0 : p.inverse_height(res.y1);

  const int n = 4096;
  double worst = std::numeric_limits<double>::infinity();
  double witness = y0;
  double I = 0.0;
  double s_prev = s0;
  for (int i = 0; i <= n; ++i) {
    const double s = s0 * (1.0 - double(i) / n);
    if (i > 0) {
      I += integrate([&](double u) { return depth_integrand(p, u); }, s,
                     s_prev, 1e-12);
      s_prev = s;
    }
    const double z = std::abs(p.slope_half(s));
    const double rhs = gamma * std::hypot(1.0, z);
    const double y = p.eval(s);
    // First inequality on [y0, y1], second on [y1, Y]; both scaled by
    // |zeta'| so they stay bounded where h' blows up.
    if (s >= s1)
      track(rhs - (std::sqrt(std::max(0.0, 1.0 - I * I)) + I * z), y, worst,
            witness);
    if (s <= s1 + s0 / n) track(rhs - z, y, worst, witness);
  }
  res.worst_margin = worst;
  res.witness_y = witness;
  res.verdict =
      worst >= -kExplicitSlack ? Verdict::Certified : Verdict::NotCertified;
  return res;
}

SigmaBetaTable make_sigma_beta(const Profile& p, double y0, int n,
                               SigmaVariant variant) {
  if (n < 2) throw ShapeError("sigma/beta table needs at least 2 points");
  const double Y = p.max_height();
  SigmaBetaTable t;
  t.y.resize(n);
  t.sigma.resize(n);
  t.beta.resize(n);
  double I = 0.0;
  double s_prev = p.inverse_height(y0);
  for (int i = 0; i < n; ++i) {
    const double y = y0 + (Y - y0) * i / (n - 1);
    const double s = p.inverse_height(std::min(y, Y));
    if (i > 0 && s < s_prev) {
      I += integrate([&](double u) { return depth_integrand(p, u); }, s,
                     s_prev, 1e-12);
      s_prev = s;
    }
    const double h = std::max(s, 1e-12);
    t.y[i] = y;
    if (variant == SigmaVariant::PaperSqrt) {
      if (I <= 1.0) {
        t.sigma[i] = std::sqrt(1.0 - I * I);
        t.beta[i] = I / h;
      } else {
        t.sigma[i] = 0.0;
        t.beta[i] = 1.0 / h;
      }
    } else {
      const double J = std::min(I, kPiHalf);
      t.sigma[i] = std::cos(J);
      t.beta[i] = std::sin(J) / h;
    }
  }
  return t;
}

CertificateResult certify_sigma_beta(const Profile& p, double gamma, double y0,
                                     const SigmaBetaTable& table,
                                     double slack) {
  const double Y = p.max_height();
  if (p.is_flat() || y0 >= Y - 1e-15)
    return vacuous_result(CertMethod::SigmaBeta, Y);
  const size_t m = table.y.size();
  if (table.sigma.size() != m || table.beta.size() != m)
    throw ShapeError("sigma/beta tables on mismatched grids");
  if (m < 2) throw ShapeError("sigma/beta table needs at least 2 points");
  for (size_t i = 1; i < m; ++i)
    if (!(table.y[i] > table.y[i - 1]))
      throw ShapeError("sigma/beta grid must be strictly increasing");
  if (std::abs(table.y.front() - y0) > 1e-9 ||
      std::abs(table.y.back() - Y) > 1e-9)
    throw ShapeError("sigma/beta table must span [y0, Y]");

  CertificateResult res;
  res.method = CertMethod::SigmaBeta;
  res.y1 = compute_y1(p, y0);

  double worst = std::numeric_limits<double>::infinity();
  double witness = y0;
  // (d) sigma(y0) = 1
  track(slack - std::abs(table.sigma.front() - 1.0), table.y.front(), worst,
        witness);
  for (size_t i = 0; i < m; ++i) {
    const double y = table.y[i];
    const double h = p.inverse_height(std::clamp(y, 0.0, Y));
    const double z = std::abs(p.slope_half(h));
    const double sg = table.sigma[i];
    const double bt = table.beta[i];
    // hb below is the bounded product h*beta.
    const double hb = h * bt;
    track(1.0 - (sg * sg + hb * hb), y, worst, witness);              // (a)
    track(gamma - (sg + hb * z) / std::hypot(1.0, z), y, worst, witness);  // (c)
    // (b) sigma' + beta; centered differences inside, second-order
    // one-sided at the ends.
    double ds;
    if (i == 0)
      ds = (-3.0 * table.sigma[0] + 4.0 * table.sigma[1] - table.sigma[2]) /
           (table.y[2] - table.y[0]);
    else if (i == m - 1)
      ds = (3.0 * table.sigma[m - 1] - 4.0 * table.sigma[m - 2] +
            table.sigma[m - 3]) /
           (table.y[m - 1] - table.y[m - 3]);
    else
      ds = (table.sigma[i + 1] - table.sigma[i - 1]) /
           (table.y[i + 1] - table.y[i - 1]);
    track(ds + bt, y, worst, witness);
  }
  res.worst_margin = worst;
  res.witness_y = witness;
  res.verdict = worst >= -slack ? Verdict::Certified : Verdict::NotCertified;
  return res;
}

CertificateResult certify_sigma_beta(const Profile& p, double gamma, double y0,
                                     const SigmaBetaTable& table) {
  return certify_sigma_beta(p, gamma, y0, table, kSigmaBetaSlack);
}

DiscreteField make_induced_field(const GrooveDomain& groove,
                                 const SigmaBetaTable& table, int n) {
  const Profile& p = *groove.profile;
  const double h0 = groove.empty() ? 0.0 : p.inverse_height(groove.y0);
  DiscreteField f;
  f.nx = n;
  f.ny = n;
  f.x0 = -h0;
  f.ybase = groove.y0;
  f.dx = n > 1 ? 2.0 * h0 / (n - 1) : 1.0;
  f.dy = n > 1 ? (groove.Y - groove.y0) / (n - 1) : 1.0;
  f.wx.resize(size_t(n) * n);
  f.wy.resize(size_t(n) * n);
  size_t k = 1;
  for (int j = 0; j < n; ++j) {
    const double y = f.ybase + j * f.dy;
    while (k + 1 < table.y.size() && table.y[k] < y) ++k;
    const double t =
        std::clamp((y - table.y[k - 1]) / (table.y[k] - table.y[k - 1]), 0.0,
                   1.0);
    const double sg = table.sigma[k - 1] + t * (table.sigma[k] - table.sigma[k - 1]);
    // beta diverges like 1/h at the apex while h*beta stays bounded;
    // interpolate the bounded product and divide by the local half-width.
    const auto hb_at = [&](size_t idx) {
      const double h =
          p.inverse_height(std::clamp(table.y[idx], 0.0, groove.Y));
      return h * table.beta[idx];
    };
    const double hb = hb_at(k - 1) + t * (hb_at(k) - hb_at(k - 1));
    const double h_row = p.inverse_height(std::clamp(y, 0.0, groove.Y));
    const double bt = h_row > 0.5 * f.dx ? hb / h_row : 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = f.x0 + i * f.dx;
      f.wx[size_t(j) * n + i] = x * bt;
      f.wy[size_t(j) * n + i] = sg;
    }
  }
  return f;
}

namespace {

// Bilinear sample of one component at (x, y); clamps to the grid box.
double sample(const DiscreteField& f, const std::vector<double>& c, double x,
              double y) {
  double u = (x - f.x0) / f.dx;
  double v = (y - f.ybase) / f.dy;
  u = std::clamp(u, 0.0, double(f.nx - 1));
  v = std::clamp(v, 0.0, double(f.ny - 1));
  const int i = std::min(int(u), f.nx - 2);
  const int j = std::min(int(v), f.ny - 2);
  const double a = u - i, b = v - j;
  const auto at = [&](int ii, int jj) { return c[size_t(jj) * f.nx + ii]; };
  return (1 - a) * (1 - b) * at(i, j) + a * (1 - b) * at(i + 1, j) +
         (1 - a) * b * at(i, j + 1) + a * b * at(i + 1, j + 1);
}

}  // namespace

CertificateResult certify_discrete_field(const GrooveDomain& groove,
                                         double gamma,
                                         const DiscreteField& field,
                                         const FieldSlack& slack) {
  const Profile& p = *groove.profile;
  if (groove.empty()) return vacuous_result(CertMethod::DiscreteField, groove.Y);
  if (field.nx < 128 || field.ny < 128)
    throw ShapeError("discrete field grid must be at least 128 x 128");
  const double h0 = p.inverse_height(groove.y0);
  const double tol = 1e-9;
  if (field.x0 > -h0 + tol || field.x0 + (field.nx - 1) * field.dx < h0 - tol ||
      field.ybase > groove.y0 + tol ||
      field.ybase + (field.ny - 1) * field.dy < groove.Y - tol)
    throw GeometryError("field grid does not cover the groove domain");

  CertificateResult res;
  res.method = CertMethod::DiscreteField;
  res.y1 = compute_y1(p, groove.y0);
  double worst = std::numeric_limits<double>::infinity();
  double witness = groove.y0;
  bool ok = true;

  // Per-row half-width of D, for the inside test.
  std::vector<double> half(field.ny, -1.0);
  for (int j = 0; j < field.ny; ++j) {
    const double y = field.ybase + j * field.dy;
    if (y >= groove.y0 - tol && y <= groove.Y + tol)
      half[j] = p.inverse_height(std::clamp(y, 0.0, groove.Y));
  }
  const auto inside = [&](int i, int j) {
    if (half[j] < 0.0) return false;
    const double x = field.x0 + i * field.dx;
    return std::abs(x) <= half[j] + tol;
  };

  // (a) pointwise norm bound; (b) interior divergence.
  for (int j = 0; j < field.ny; ++j)
    for (int i = 0; i < field.nx; ++i) {
      if (!inside(i, j)) continue;
      const size_t k = size_t(j) * field.nx + i;
      const double y = field.ybase + j * field.dy;
      const double mn = 1.0 - std::hypot(field.wx[k], field.wy[k]);
      track(mn, y, worst, witness);
      if (mn < -slack.norm) ok = false;
      if (i > 0 && i + 1 < field.nx && j > 0 && j + 1 < field.ny &&
          inside(i - 1, j) && inside(i + 1, j) && inside(i, j - 1) &&
          inside(i, j + 1)) {
        const double div =
            (field.wx[k + 1] - field.wx[k - 1]) / (2.0 * field.dx) +
            (field.wy[k + field.nx] - field.wy[k - field.nx]) /
                (2.0 * field.dy);
        track(div, y, worst, witness);
        if (div < -slack.divergence) ok = false;
      }
    }

  // (c) side walls: outward normal (+-|zeta'|, 1)/sqrt(1+zeta'^2).
  const int nb = 1024;
  for (int k = 0; k <= nb; ++k) {
    const double s = h0 * k / nb;
    const double y = p.eval(s);
    if (y < groove.y0) continue;
    const double z = std::abs(p.slope_half(s));
    const double nrm = std::hypot(1.0, z);
    for (int side = -1; side <= 1; side += 2) {
      const double wx = sample(field, field.wx, side * s, y);
      const double wy = sample(field, field.wy, side * s, y);
      const double mc = gamma - (side * wx * z + wy) / nrm;
      track(mc, y, worst, witness);
      if (mc < -slack.boundary) ok = false;
    }
  }

  // (d) lid at y = y0: outward normal -e_y, w . nu = -1 means w_y = 1.
  for (int k = 0; k <= nb; ++k) {
    const double x = -h0 + 2.0 * h0 * k / nb;
    const double md = -std::abs(sample(field, field.wy, x, groove.y0) - 1.0);
    track(md, groove.y0, worst, witness);
    if (md < -slack.boundary) ok = false;
  }

  res.worst_margin = worst;
  res.witness_y = witness;
  res.verdict = ok ? Verdict::Certified : Verdict::NotCertified;
  return res;
}

CertificateResult certify_discrete_field(const GrooveDomain& groove,
                                         double gamma,
                                         const DiscreteField& field) {
  const double spacing = std::min(field.dx, field.dy);
  return certify_discrete_field(groove, gamma, field,
                                FieldSlack::from_spacing(spacing));
}

}  // namespace wetlab
