#include "run.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "certificate.hpp"
#include "experiment.hpp"
#include "geometry.hpp"
#include "output.hpp"
#include "solver.hpp"
#include "wetting.hpp"

namespace wetlab {

namespace {

constexpr double kRadToDeg = 180.0 / 3.14159265358979323846;

std::string fmt_opt(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string("none");
}

// Creates outdir and drops a copy of the config file there, so every run
// directory records how it was produced.
void prepare_outdir(const RunConfig& cfg) {
  std::filesystem::create_directories(cfg.outdir);
  if (!cfg.source_path.empty()) {
    std::error_code ec;
    std::filesystem::copy_file(
        cfg.source_path, std::filesystem::path(cfg.outdir) / "config_used.cfg",
        std::filesystem::copy_options::overwrite_existing, ec);
  }
}

int effective_threads(const RunConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void print_analysis(const EffectiveWetting& w) {
  std::cout << "gamma=" << format_number(w.gamma) << "\n"
            << "gamma_c=" << format_number(w.gamma_c) << "\n"
            << "r=" << format_number(w.roughness) << "\n"
            << "regime=" << regime_name(w.regime) << "\n"
            << "gamma_eff=" << format_number(w.gamma_eff) << "\n"
            << "y0=" << fmt_opt(w.y0) << "\n"
            << "s0=" << fmt_opt(w.s0) << "\n"
            << "f=" << format_number(w.cassie_f) << "\n"
            << "rho=" << format_number(w.cassie_rho) << "\n"
            << "theta_Y_deg=" << format_number(w.theta_Y * kRadToDeg) << "\n"
            << "theta_W_deg=" << format_number(w.theta_W * kRadToDeg) << "\n"
            << "theta_eff_deg=" << format_number(w.theta_eff * kRadToDeg)
            << "\n";
}

int run_analyze(const RunConfig& cfg) {
  Profile p = profile_from_config(cfg);
  print_analysis(effective_gamma(p, cfg.gamma));
  if (cfg.sweep_points > 0) {
    prepare_outdir(cfg);
    std::ofstream csv(std::filesystem::path(cfg.outdir) / "gamma_sweep.csv",
                      std::ios::binary);
    if (!csv) throw IoError("cannot write gamma_sweep.csv under " + cfg.outdir);
    csv << "gamma,regime,gamma_eff,theta_eff_deg\r\n";
    for (int i = 0; i < cfg.sweep_points; ++i) {
      double g = 0.99 * i / std::max(1, cfg.sweep_points - 1);
      EffectiveWetting w = effective_gamma(p, g);
      csv << format_number(g) << ',' << regime_name(w.regime) << ','
          << format_number(w.gamma_eff) << ','
          << format_number(w.theta_eff * kRadToDeg) << "\r\n";
    }
  }
  return 0;
}

int run_certify(const RunConfig& cfg) {
  Profile p = profile_from_config(cfg);
  EffectiveWetting w = effective_gamma(p, cfg.gamma);
  double Y = p.max_height();
  if (!w.y0 || *w.y0 >= Y) {
    // Full wetting (or a minimum at y = Y): the groove domain is empty.
    std::cout << "verdict=Certified method=explicit vacuous=1 y0=" << fmt_opt(w.y0)
              << " worst_margin=0\n";
    return 0;
  }
  double y0 = *w.y0;
  CertificateResult res = certify_explicit(p, cfg.gamma, y0);
  std::cout << "verdict="
            << (res.verdict == Verdict::Certified ? "Certified" : "NotCertified")
            << " method=explicit vacuous=0 y0=" << format_number(y0)
            << " y1=" << format_number(res.y1)
            << " worst_margin=" << format_number(res.worst_margin)
            << " witness_y=" << format_number(res.witness_y) << "\n";

  // Margin curve (y, RHS - LHS) of the binding inequality, for plotting.
  prepare_outdir(cfg);
  std::ofstream csv(std::filesystem::path(cfg.outdir) / "margins.csv",
                    std::ios::binary);
  if (!csv) throw IoError("cannot write margins.csv under " + cfg.outdir);
  csv << "y,margin\r\n";
  double s_lo = p.inverse_height(y0);  // y0 <-> s_lo, Y <-> 0
  const int n = 512;
  for (int i = 0; i <= n; ++i) {
    // stay strictly inside the semi-period: zeta'(0) = 0 makes h' blow up
    double s = std::max(s_lo * 1e-6, s_lo - (s_lo * i) / n);
    double y = p.eval(s);
    double hp = 1.0 / p.slope_half(s);  // h'(y) = 1/zeta'(s), negative
    double rhs = cfg.gamma * std::sqrt(1.0 + hp * hp);
    double lhs;
    if (y <= res.y1) {
      double I = std::min(1.0, weighted_depth(p, y0, y));
      lhs = -hp * std::sqrt(std::max(0.0, 1.0 - I * I)) + I;
    } else {
      lhs = 1.0;
    }
    csv << format_number(y) << ',' << format_number(rhs - lhs) << "\r\n";
  }
  return 0;
}

int run_minimize(const RunConfig& cfg) {
  Profile p = profile_from_config(cfg);
  double eps = cfg.epsilon_list.empty() ? 1.0 : cfg.epsilon_list.front();
  if (p.is_flat()) eps = 1.0;
  RoughDomain dom =
      cfg.domain_base == "disk"
          ? make_disk(cfg.radius, p, eps, cfg.gamma, cfg.samples_per_period)
          : make_channel(cfg.width, cfg.height, p, eps, cfg.gamma,
                         cfg.gamma_other, cfg.samples_per_period);
  int res = cfg.resolution;
  if (!p.is_flat())
    res = std::max(res, static_cast<int>(std::ceil(8.0 / eps)));
  Grid grid = rasterize(dom, res);
  auto stencil = perimeter_stencil(grid.spacing, cfg.neighborhood);
  auto [field, report] = minimize_with_volume(grid, stencil, cfg.q, cfg.slack);

  prepare_outdir(cfg);
  write_pgm((std::filesystem::path(cfg.outdir) / "droplet.pgm").string(), field);
  std::cout << "perimeter_term=" << format_number(report.perimeter_term) << "\n"
            << "trace_term=" << format_number(report.trace_term) << "\n"
            << "total=" << format_number(report.total) << "\n"
            << "lambda=" << format_number(report.lambda) << "\n"
            << "achieved_volume=" << format_number(report.achieved_volume) << "\n"
            << "cut_value=" << format_number(report.cut_value) << "\n"
            << "gap_bound=" << format_number(report.gap_bound) << "\n"
            << "touches_other_walls=" << (report.touches_other_walls ? 1 : 0)
            << "\n";
  std::ofstream csv(std::filesystem::path(cfg.outdir) / "energy.csv",
                    std::ios::binary);
  if (!csv) throw IoError("cannot write energy.csv under " + cfg.outdir);
  csv << "q,gamma,epsilon,resolution,perimeter_term,trace_term,total,lambda,"
         "achieved_volume\r\n";
  csv << format_number(cfg.q) << ',' << format_number(cfg.gamma) << ','
      << format_number(eps) << ',' << res << ','
      << format_number(report.perimeter_term) << ','
      << format_number(report.trace_term) << ','
      << format_number(report.total) << ',' << format_number(report.lambda)
      << ',' << format_number(report.achieved_volume) << "\r\n";
  return 0;
}

int run_converge(const RunConfig& cfg) {
  if (cfg.profile_kind == "tabulated")
    throw ValidationError(
        {"profile.kind: converge supports flat, triangle and sinusoid"});
  ExperimentConfig ec;
  ec.profile_kind = cfg.profile_kind;
  ec.profile_param = cfg.profile_kind == "triangle" ? cfg.profile_m : cfg.profile_a;
  ec.gamma = cfg.gamma;
  ec.q = cfg.q;
  ec.epsilon_list = cfg.epsilon_list;
  ec.width = cfg.width;
  ec.height = cfg.height;
  ec.gamma_other = cfg.gamma_other;
  ec.resolution = cfg.resolution;
  ec.samples_per_period = cfg.samples_per_period;
  ec.threads = effective_threads(cfg);
  ec.outdir = cfg.outdir;
  SweepResult result = epsilon_sweep(ec);
  prepare_outdir(cfg);
  emit_outputs(result, cfg.outdir);
  std::cout << "regime=" << regime_name(result.wetting.regime)
            << " gamma_eff=" << format_number(result.wetting.gamma_eff)
            << " rows=" << result.rows.size() << " outdir=" << cfg.outdir
            << "\n";
  return 0;
}

}  // namespace

Profile profile_from_config(const RunConfig& cfg) {
  if (cfg.profile_kind == "flat") return Profile::flat();
  if (cfg.profile_kind == "triangle") return Profile::triangle(cfg.profile_m);
  if (cfg.profile_kind == "sinusoid") return Profile::sinusoid(cfg.profile_a);
  // tabulated: CSV with header "s,zeta"
  std::ifstream in(cfg.profile_samples);
  if (!in) throw IoError("cannot open profile samples: " + cfg.profile_samples);
  std::string line;
  if (!std::getline(in, line))
    throw InvalidProfileError("empty profile sample file");
  std::vector<std::pair<double, double>> samples;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    double s = 0.0, z = 0.0;
    if (std::sscanf(line.c_str(), "%lf,%lf", &s, &z) != 2)
      throw InvalidProfileError("bad sample line: " + line);
    samples.emplace_back(s, z);
  }
  return Profile::tabulated(std::move(samples));
}

int run(const std::string& subcommand, const RunConfig& cfg) {
  try {
    if (subcommand == "analyze") return run_analyze(cfg);
    if (subcommand == "certify") return run_certify(cfg);
    if (subcommand == "minimize") return run_minimize(cfg);
    if (subcommand == "converge") return run_converge(cfg);
    std::cerr << "unknown subcommand: " << subcommand << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const MeasurementError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    // geometry, constraint, profile and kink errors all map to 2
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace wetlab
