#pragma once

#include <vector>

#include "dwlab/heat.hpp"
#include "dwlab/radial.hpp"

namespace dwlab {

struct WaveConfig {
  double dt = 0.0;            // 0 means cfl_safety * dr
  double cfl_safety = 0.9;    // explicit stability: dt <= cfl_safety * dr
  double support_margin = 2.0;
  bool enforce_support = true;  // require supp g + T + margin <= r_max
};

/// Resolved time step for a grid.
double wave_time_step(const RadialGrid& g, const WaveConfig& cfg);

/// r_supp + T + margin: with unit propagation speed the outer Dirichlet
/// condition is exact up to the margin.
double wave_domain_radius(double r_supp, double horizon, const WaveConfig& cfg);

struct WaveSample {
  double t = 0.0;
  RadialField u;
  RadialField v;                  // centered time derivative
  double staggered_energy = 0.0;  // |du/dt|^2_W/2 + a(u_n, u_{n+1})/2
};

struct WaveTrajectory {
  std::vector<WaveSample> samples;
  GridMeta grid;
};

/// Damped-wave solution map with data (0, g): leapfrog with the damping term
/// averaged across half-steps.  States are stored at the step times nearest
/// the requested output times (always including the horizon).
WaveTrajectory linear_evolve(const RadialField& g, double T, const WaveConfig& cfg,
                             const std::vector<double>& output_times);

/// Same solution through the flat reduction: W = e^{t/2} r^{1/2} u solves a
/// potential-perturbed 1D wave equation on the line after odd reflection in
/// r - 1.  Returns the recovered (u, v) trajectory plus the line-solver
/// diagnostics used by the positivity argument.
struct ReducedTrajectory {
  WaveTrajectory recovered;
  double max_center_abs = 0.0;   // max over steps of |W(0, t)| (odd symmetry)
  double potential_min = 0.0;    // extremes of m(y) over the grid
  double potential_max = 0.0;
};

ReducedTrajectory reduced_line_evolve(const RadialField& g, double T,
                                      const WaveConfig& cfg,
                                      const std::vector<double>& output_times);

struct PositivityReport {
  bool applicable = false;  // false when the datum changes sign
  double min_radial = 0.0;  // min over grid and stored times, radial solver
  double min_reduced = 0.0; // same for the reduced line solver
  double data_sup = 0.0;
};

/// Runs both solvers on nonnegative data and reports the worst undershoot.
PositivityReport positivity_check(const RadialField& g, double T, const WaveConfig& cfg);

struct ContractionReport {
  std::vector<double> times;
  std::vector<double> ratios;  // |u(t)|_{L^1_dmu} / ((1 - e^{-t}) |g|_{L^1_dmu})
  double max_ratio = 0.0;
};

/// Weighted-mass contraction of the solution map against (1 - e^{-t}).
ContractionReport weighted_mass_contraction_check(const RadialField& g,
                                                  const std::vector<double>& times,
                                                  const WaveConfig& cfg);

struct MatsumuraGapReport {
  std::vector<double> times;
  std::vector<double> grad_ratios;  // t^{3/2} |grad (S - e^{tL}) g|_2 / |g|_2
  std::vector<double> dt_ratios;    // t^2 |d_t (S - e^{tL}) g|_2 / |g|_2
  double grad_constant = 0.0;       // fitted suprema
  double dt_constant = 0.0;
  GridMeta grid;
};

/// Diffusion-phenomenon gap between the damped-wave map and the heat
/// semigroup, normalized by the classical whole-space rates.  Times must lie
/// in [1, infinity).
MatsumuraGapReport matsumura_gap_report(const RadialField& g,
                                        const std::vector<double>& times,
                                        const WaveConfig& wcfg, const HeatConfig& hcfg);

struct LogMatsumuraReport {
  double q = 1.0;
  std::vector<double> times;
  std::vector<double> grad_ratios;  // |grad S(t)g| / (h^{1/q} (|g|_{q,dmu} + |g|_2))
  std::vector<double> dt_ratios;    // |d_t S(t)g| (1+t)^{1/2} / (h^{1/q} (...))
  double grad_constant = 0.0;
  double dt_constant = 0.0;
};

/// Decay of the damped-wave map against the log-weighted rates carried by
/// weighted data.  q in [1, 2].
LogMatsumuraReport log_matsumura_report(const RadialField& g, double q,
                                        const std::vector<double>& times,
                                        const WaveConfig& cfg);

}  // namespace dwlab
