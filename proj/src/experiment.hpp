#pragma once

#include <memory>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "solver.hpp"
#include "wetting.hpp"

namespace wetlab {

struct ExperimentConfig {
  std::string profile_kind = "sinusoid";  // flat | triangle | sinusoid
  double profile_param = 0.5;
  double gamma = 0.3;
  double q = 0.05;
  std::vector<double> epsilon_list;  // strictly decreasing, each 1/j
  double width = 1.0;
  double height = 0.6;
  double gamma_other = 0.999;
  int resolution = 256;  // cells per unit length; raised to keep spacing <= eps/8
  int samples_per_period = 64;
  int threads = 1;
  std::string outdir = "out";
};

struct ConvergenceRow {
  double epsilon = 0.0;
  double F_eps = 0.0;
  double F_eff = 0.0;
  double recovery_energy = 0.0;
  double l1_distance = 0.0;
  double angle_measured = 0.0;   // radians
  double angle_predicted = 0.0;  // radians
  std::string error;             // empty when the row solved cleanly
};

struct ReferenceSolution {
  std::unique_ptr<RoughDomain> dom;
  std::unique_ptr<Grid> grid;
  DropletField field;
  EnergyReport report;
  double gamma_w = 0.0;  // effective flat-wall coefficient
};

struct SweepResult {
  EffectiveWetting wetting;
  double roughness = 1.0;
  std::vector<ConvergenceRow> rows;
  ReferenceSolution reference;
  // Per-row droplets for mask output; grids keep the fields' backing alive.
  std::vector<std::unique_ptr<Grid>> row_grids;
  std::vector<std::unique_ptr<RoughDomain>> row_doms;
  std::vector<DropletField> row_fields;
};

Profile make_profile(const std::string& kind, double param);

// Grid resolution shared by every row of the sweep (and the reference).
int sweep_resolution(const ExperimentConfig& cfg);

// Flat-wall droplet with the regime's effective coefficient: this is E_0.
ReferenceSolution effective_reference(const ExperimentConfig& cfg,
                                      const EffectiveWetting& wet,
                                      int resolution);

SweepResult epsilon_sweep(const ExperimentConfig& cfg);

// CSV + energy plot + occupancy masks under outdir (must exist).
void emit_outputs(const SweepResult& result, const std::string& outdir);

}  // namespace wetlab
