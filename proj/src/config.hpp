#pragma once

#include <map>
#include <string>
#include <vector>

#include "errors.hpp"

namespace wetlab {

// Fully validated run configuration. One flat key/value file with dotted
// sections; every field has a default so a minimal file (or an empty one)
// is valid.
struct RunConfig {
  // profile block
  std::string profile_kind = "flat";   // flat | triangle | sinusoid | tabulated
  double profile_m = 1.0;              // triangle slope
  double profile_a = 0.5;              // sinusoid amplitude
  std::string profile_samples;         // CSV path for tabulated profiles

  // wetting block
  double gamma = 0.3;

  // domain block
  std::string domain_base = "channel";  // channel | disk
  double width = 1.0;
  double height = 0.6;
  double radius = 0.3;
  double gamma_other = 0.999;
  int samples_per_period = 64;

  // experiment block
  double q = 0.05;
  std::vector<double> epsilon_list = {0.25, 0.125, 0.0625};
  std::string outdir = "out";

  // solver block
  int resolution = 256;
  double slack = 0.005;  // volume slack, fraction of q
  int neighborhood = 16;
  int threads = 0;  // 0 = hardware parallelism

  // analyze block: if > 0, `analyze` also writes a gamma sweep CSV with
  // this many rows over [0, 0.99].
  int sweep_points = 0;

  // provenance: path the config was loaded from ("" for defaults)
  std::string source_path;
};

// Parses "1/j" or a decimal that equals 1/j for some integer j >= 1.
// Returns j, or 0 if the value is not a unit fraction.
int parse_unit_fraction(const std::string& text, double* value);

// Reads a UTF-8 key/value file ("section.key = value", '#' comments) and
// returns the raw pairs in file order. Later duplicates win.
std::map<std::string, std::string> read_key_values(const std::string& path);

// Builds a validated RunConfig from raw pairs plus --set overrides.
// Collects every violation and throws ValidationError listing all of them.
RunConfig make_config(const std::map<std::string, std::string>& pairs,
                      const std::vector<std::string>& overrides);

// Convenience: read + validate in one step.
RunConfig parse_config(const std::string& path,
                       const std::vector<std::string>& overrides = {});

}  // namespace wetlab
