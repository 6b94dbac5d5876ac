#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dwlab {

enum class ExperimentKind {
  HeatDecay,
  LinearEstimates,
  Inequalities,
  LifespanSweep,
  GlobalDecay,
  SupersolutionCompare,
  VerifyAll,
};

std::string to_string(ExperimentKind kind);

/// Flat sectioned key/value experiment description.  Every knob has a
/// default; parse_config overrides from file and validates the combination
/// against the solver preconditions.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::VerifyAll;
  std::uint64_t seed = 1;

  // [grid]
  double dr = 0.02;

  // [solver]
  double dt = 0.0;  // 0 -> derived from dr (CFL for waves, dr for heat)
  double cfl_safety = 0.9;
  int rannacher_steps = 2;
  double tol_tail = 1e-10;

  // [data]  bump [(r-lo)(hi-r)]_+^power scaled to combined norm `scale`
  double data_lo = 1.0;
  double data_hi = 2.0;
  double data_power = 2.0;
  double data_scale = 1.0;

  // [sweep]
  double p = 2.0;
  std::vector<double> epsilons;
  double horizon = 2e4;

  // [blowup]
  double blow_threshold = 1e8;
  double stability_rtol = 0.02;
  int max_refines = 3;

  // [report]
  std::vector<double> times{1.0, 3.0, 10.0, 30.0, 100.0};
  std::vector<double> q_values{1.0, 2.0};
};

struct ConfigParse {
  ExperimentConfig config;
  std::vector<std::string> errors;  // empty on success; each names the key

  bool ok() const { return errors.empty(); }
};

/// Reads a sectioned key = value file ('#' comments).  Returns either the
/// validated config or the full list of violations, each naming the
/// offending key and rule.
ConfigParse parse_config(const std::string& path);

/// Validation shared with the in-memory path (CLI defaults).
std::vector<std::string> validate_config(const ExperimentConfig& cfg);

}  // namespace dwlab
