#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace wetlab {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

bool to_double(const std::string& s, double* out) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) return false;
    *out = v;
    return true;
  } catch (...) {
    return false;
  }
}

bool to_int(const std::string& s, int* out) {
  try {
    size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) return false;
    *out = static_cast<int>(v);
    return true;
  } catch (...) {
    return false;
  }
}

}  // namespace

int parse_unit_fraction(const std::string& text, double* value) {
  std::string t = trim(text);
  size_t slash = t.find('/');
  if (slash != std::string::npos) {
    std::string num = trim(t.substr(0, slash));
    std::string den = trim(t.substr(slash + 1));
    int j = 0;
    if (num == "1" && to_int(den, &j) && j >= 1) {
      *value = 1.0 / j;
      return j;
    }
    return 0;
  }
  double v = 0.0;
  if (!to_double(t, &v) || v <= 0.0 || v > 1.0) return 0;
  double jd = 1.0 / v;
  int j = static_cast<int>(std::lround(jd));
  if (j >= 1 && std::abs(jd - j) < 1e-9 * j) {
    *value = 1.0 / j;
    return j;
  }
  return 0;
}

std::map<std::string, std::string> read_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::map<std::string, std::string> pairs;
  std::string line;
  int lineno = 0;
  std::vector<std::string> issues;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos) {
      issues.push_back("line " + std::to_string(lineno) +
                       ": expected key = value");
      continue;
    }
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    if (key.empty()) {
      issues.push_back("line " + std::to_string(lineno) + ": empty key");
      continue;
    }
    pairs[key] = val;
  }
  if (!issues.empty()) throw ValidationError(issues);
  return pairs;
}

RunConfig make_config(const std::map<std::string, std::string>& pairs,
                      const std::vector<std::string>& overrides) {
  std::map<std::string, std::string> kv = pairs;
  std::vector<std::string> issues;
  for (const auto& ov : overrides) {
    size_t eq = ov.find('=');
    if (eq == std::string::npos) {
      issues.push_back("--set override '" + ov + "': expected key=value");
      continue;
    }
    kv[trim(ov.substr(0, eq))] = trim(ov.substr(eq + 1));
  }

  RunConfig cfg;
  std::map<std::string, std::string> left = kv;
  auto take = [&](const std::string& key) -> const std::string* {
    auto it = kv.find(key);
    if (it == kv.end()) return nullptr;
    left.erase(key);
    return &it->second;
  };
  auto get_double = [&](const std::string& key, double* dst) {
    if (const std::string* v = take(key)) {
      if (!to_double(*v, dst))
        issues.push_back(key + ": expected a number, got '" + *v + "'");
    }
  };
  auto get_int = [&](const std::string& key, int* dst) {
    if (const std::string* v = take(key)) {
      if (!to_int(*v, dst))
        issues.push_back(key + ": expected an integer, got '" + *v + "'");
    }
  };
  auto get_string = [&](const std::string& key, std::string* dst) {
    if (const std::string* v = take(key)) *dst = *v;
  };

  get_string("profile.kind", &cfg.profile_kind);
  get_double("profile.m", &cfg.profile_m);
  get_double("profile.a", &cfg.profile_a);
  get_string("profile.samples", &cfg.profile_samples);

  // experiment.gamma is an accepted alias for wetting.gamma (last writer
  // wins; the alias takes precedence if both are present).
  get_double("wetting.gamma", &cfg.gamma);
  get_double("experiment.gamma", &cfg.gamma);

  get_string("domain.base", &cfg.domain_base);
  get_double("domain.width", &cfg.width);
  get_double("domain.height", &cfg.height);
  get_double("domain.radius", &cfg.radius);
  get_double("domain.gamma_other", &cfg.gamma_other);
  get_int("domain.samples_per_period", &cfg.samples_per_period);

  get_double("experiment.q", &cfg.q);
  get_string("experiment.outdir", &cfg.outdir);
  get_string("output.outdir", &cfg.outdir);

  get_int("solver.resolution", &cfg.resolution);
  get_double("solver.slack", &cfg.slack);
  get_int("solver.neighborhood", &cfg.neighborhood);
  get_int("solver.threads", &cfg.threads);
  get_int("analyze.sweep_points", &cfg.sweep_points);

  const std::string* eps = take("experiment.epsilon_list");
  if (!eps) eps = take("domain.epsilon_list");
  if (eps) {
    cfg.epsilon_list.clear();
    std::stringstream ss(*eps);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      double v = 0.0;
      if (parse_unit_fraction(item, &v) == 0) {
        issues.push_back("experiment.epsilon_list: epsilon must equal 1/j, got '" +
                         item + "'");
      } else {
        cfg.epsilon_list.push_back(v);
      }
    }
    if (cfg.epsilon_list.empty() && issues.empty())
      issues.push_back("experiment.epsilon_list: empty list");
  }

  for (const auto& [key, val] : left)
    issues.push_back(key + ": unknown key");

  if (cfg.profile_kind != "flat" && cfg.profile_kind != "triangle" &&
      cfg.profile_kind != "sinusoid" && cfg.profile_kind != "tabulated")
    issues.push_back("profile.kind: must be flat, triangle, sinusoid or tabulated, got '" +
                     cfg.profile_kind + "'");
  if (cfg.profile_kind == "tabulated") {
    if (cfg.profile_samples.empty()) {
      issues.push_back("profile.samples: required for tabulated profiles");
    } else if (!std::ifstream(cfg.profile_samples)) {
      issues.push_back("profile.samples: cannot open '" + cfg.profile_samples + "'");
    }
  }
  if (cfg.profile_kind == "triangle" && cfg.profile_m <= 0.0)
    issues.push_back("profile.m: must be positive");
  if (cfg.profile_kind == "sinusoid" && cfg.profile_a <= 0.0)
    issues.push_back("profile.a: must be positive");
  if (!(cfg.gamma >= 0.0 && cfg.gamma < 1.0))
    issues.push_back("wetting.gamma: must satisfy 0 <= gamma < 1, got " +
                     std::to_string(cfg.gamma));
  if (cfg.domain_base != "channel" && cfg.domain_base != "disk")
    issues.push_back("domain.base: must be channel or disk");
  if (cfg.width <= 0.0) issues.push_back("domain.width: must be positive");
  if (cfg.height <= 0.0) issues.push_back("domain.height: must be positive");
  if (cfg.radius <= 0.0) issues.push_back("domain.radius: must be positive");
  if (!(cfg.gamma_other >= 0.0 && cfg.gamma_other <= 1.0))
    issues.push_back("domain.gamma_other: must lie in [0, 1]");
  if (cfg.samples_per_period < 4)
    issues.push_back("domain.samples_per_period: must be >= 4");
  if (cfg.q <= 0.0) issues.push_back("experiment.q: must be positive");
  if (cfg.outdir.empty()) issues.push_back("output.outdir: must be non-empty");
  if (cfg.resolution < 8) issues.push_back("solver.resolution: must be >= 8");
  if (!(cfg.slack > 0.0 && cfg.slack < 1.0))
    issues.push_back("solver.slack: must lie in (0, 1)");
  if (cfg.neighborhood != 8 && cfg.neighborhood != 16)
    issues.push_back("solver.neighborhood: must be 8 or 16");
  if (cfg.threads < 0) issues.push_back("solver.threads: must be >= 0");
  if (cfg.sweep_points < 0) issues.push_back("analyze.sweep_points: must be >= 0");
  for (size_t i = 1; i < cfg.epsilon_list.size(); ++i) {
    if (cfg.epsilon_list[i] >= cfg.epsilon_list[i - 1]) {
      issues.push_back("experiment.epsilon_list: values must be strictly decreasing");
      break;
    }
  }

  if (!issues.empty()) throw ValidationError(issues);
  return cfg;
}

RunConfig parse_config(const std::string& path,
                       const std::vector<std::string>& overrides) {
  RunConfig cfg = make_config(read_key_values(path), overrides);
  cfg.source_path = path;
  return cfg;
}

}  // namespace wetlab
