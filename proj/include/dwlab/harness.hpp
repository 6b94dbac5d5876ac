#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dwlab/config.hpp"
#include "dwlab/semilinear.hpp"

namespace dwlab {

/// One verified statement: an identifier, what was measured, and whether the
/// desk-scale check passed.
struct LemmaCheck {
  std::string id;
  std::string description;
  bool pass = false;
  std::map<std::string, double> metrics;
};

enum class FitModel { Sub2, CriticalQ, Global };

struct FitResult {
  std::string model;
  double exponent = 0.0;    // fitted slope (sub-2)
  double constant = 0.0;    // exp(intercept) for sub-2, min Q for critical-Q
  double band_ratio = 0.0;  // critical-Q: max Q / min Q
  double residual = 0.0;    // RMS of log-space deviations
  int points = 0;
};

/// Expected lifespan slope (p-1)/(2-p) for 1 < p < 2.
double expected_sub2_slope(double p);

/// Least-squares fits of a lifespan sweep against the scaling laws.  Uses
/// converged blow-up records only; requires at least 3 of them.
FitResult fit_exponent(const std::vector<LifespanRecord>& records, FitModel model);

/// Runs lifespan_estimate for every epsilon in the config, in parallel,
/// isolating per-point failures (failed points come back with
/// converged = false and T_measured = 0).  Records are ordered by input.
std::vector<LifespanRecord> run_sweep(const ExperimentConfig& cfg, int jobs);

/// Per-kind defaults used when no config file is given.
ExperimentConfig default_config(ExperimentKind kind);

/// Experiment drivers: run the measurement, write CSV/JSON artifacts under
/// out_dir, and return the lemma rows for the summary.
std::vector<LemmaCheck> run_heat_decay_experiment(const ExperimentConfig& cfg,
                                                  const std::string& out_dir);
std::vector<LemmaCheck> run_linear_estimates_experiment(const ExperimentConfig& cfg,
                                                        const std::string& out_dir);
std::vector<LemmaCheck> run_inequalities_experiment(const ExperimentConfig& cfg,
                                                    const std::string& out_dir);
std::vector<LemmaCheck> run_lifespan_sweep_experiment(const ExperimentConfig& cfg,
                                                      const std::string& out_dir, int jobs);
std::vector<LemmaCheck> run_global_decay_experiment(const ExperimentConfig& cfg,
                                                    const std::string& out_dir);
std::vector<LemmaCheck> run_supersolution_experiment(const ExperimentConfig& cfg,
                                                     const std::string& out_dir);

/// Writes summary.md and summary.json under out_dir; true when every row passed.
bool emit_summary(const std::vector<LemmaCheck>& checks, const std::string& out_dir);

/// Dispatches a parallel index loop over [0, count) with bounded workers.
void parallel_for(int count, int jobs, const std::function<void(int)>& body);

}  // namespace dwlab
