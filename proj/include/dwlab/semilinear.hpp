#pragma once

#include <vector>

#include "dwlab/heat.hpp"
#include "dwlab/radial.hpp"

namespace dwlab {

enum class RunStatus { Completed, BlewUp };

struct SemilinearConfig {
  double p = 2.0;
  double epsilon = 1.0;
  double dt = 0.0;             // 0 means cfl_safety * dr
  double cfl_safety = 0.9;
  double blow_threshold = 1e8;
  int output_samples = 200;    // functional cadence along the run
  bool source_enabled = true;  // off reduces the run to the linear flow
  bool record_source = false;  // keep |u|^p at every level (Duhamel checks)
  std::vector<double> state_times;  // store full states at these times
};

struct FunctionalSample {
  double t = 0.0;
  double mass_dmu = 0.0;  // |u|_{L^1_dmu}
  double grad_l2 = 0.0;
  double dtu_l2 = 0.0;
  double sup = 0.0;
  double xt = 0.0;        // running sup of mass + grad / h
};

struct SemilinearRun {
  RunStatus status = RunStatus::Completed;
  double horizon = 0.0;
  double t_end = 0.0;  // blow-up time when status == BlewUp, else the horizon
  double p = 0.0;
  double epsilon = 0.0;
  double dt = 0.0;
  GridMeta grid;
  std::vector<FunctionalSample> series;
  std::vector<double> state_times;
  std::vector<RadialField> states;
  std::vector<std::vector<double>> source_history;  // one entry per level
};

/// Leapfrog evolution of u'' - Lap u + u' = |u|^p with data (0, eps*g).
/// Stops at the blow-up threshold (non-finite values confirm blow-up at the
/// prior level) or at the horizon.
SemilinearRun semilinear_evolve(const RadialField& g, double T_horizon,
                                const SemilinearConfig& cfg);

struct BlowupDecision {
  bool blew_up = false;
  double t_cross = 0.0;          // finest measured crossing time
  bool stable = false;           // crossing moved < stability_rtol under dt halving
  std::vector<double> history;   // crossing time per dt level
};

/// Runs the evolution with successive dt halvings until the threshold
/// crossing time stabilizes.
BlowupDecision confirm_blowup(const RadialField& g, double T_horizon,
                              const SemilinearConfig& cfg, double stability_rtol = 0.02,
                              int max_refines = 3);

struct LifespanConfig {
  double dr = 0.02;
  double cfl_safety = 0.9;
  double blow_threshold = 1e8;
  double horizon = 2e4;
  double stability_rtol = 0.02;
  int max_refines = 3;
  // Data family [(r - lo)(hi - r)]_+^k, normalized so |g|_2 + |g|_{1,dmu}
  // equals data_scale.  Strong data (large scale) shifts the blow-up window
  // to genuinely small epsilon where the scaling laws are visible.
  double bump_lo = 1.0;
  double bump_hi = 2.0;
  double bump_power = 2.0;
  double data_scale = 1.0;
  // Outer boundary: the outgoing front is damped like e^{-t/2} and the
  // residual field spreads diffusively, so long horizons use the Gaussian
  // tail rule instead of the propagation rule.
  double tail_tol = 1e-8;
  double wave_margin = 2.0;
};

struct LifespanRecord {
  double p = 0.0;
  double epsilon = 0.0;
  double T_measured = 0.0;
  bool converged = false;        // dt-refinement stability reached
  bool completed_horizon = false;  // never crossed: T_measured is a lower bound
  double Q_value = 0.0;          // eps^{p-1} * integral_0^T h^{p-1}
  int grid_n = 0;
  double dt = 0.0;
};

/// Domain radius for a lifespan run: the smaller of the propagation rule and
/// the diffusive-tail rule.
double lifespan_domain_radius(double r_supp, double horizon, const LifespanConfig& cfg);

/// Measures the blow-up lifespan for one (p, epsilon) pair.
LifespanRecord lifespan_estimate(double p, double epsilon, const LifespanConfig& cfg);

struct DuhamelReport {
  std::vector<double> times;
  std::vector<double> rel_deviation;  // |u_direct - u_reconstructed|_2 / |u_direct|_2
  double max_rel_deviation = 0.0;
};

/// Rebuilds the solution at the run's stored state times from the linear
/// solution map applied to the data and to the recorded source history, and
/// compares against the directly evolved states.  The run must have been
/// produced with record_source plus state_times.
DuhamelReport duhamel_consistency_check(const SemilinearRun& run, const RadialField& g);

struct HeatComparisonResult {
  double T = 0.0;
  bool hit_horizon = false;  // amplification factor never blew up
  double integral = 0.0;     // integral_0^T |e^{s Lap} f|_inf^{p-1} ds at the stop
};

/// Blow-up time of the amplification factor
/// (1 - (p-1) eps^{p-1} integral_0^t |e^{s Lap} f|_inf^{p-1} ds)^(-1/(p-1)),
/// the comparison lifespan carried over from the heat flow.  f must be
/// nonnegative.
HeatComparisonResult heat_comparison_lifespan(const RadialField& f, double eps, double p,
                                              double horizon, const HeatConfig& cfg);

struct GlobalDecayReport {
  std::vector<double> times;
  std::vector<double> grad_ratio;    // |grad u| (1+t)(1+log(1+t))
  std::vector<double> dtu_ratio;     // |d_t u| (1+t)^{3/2}(1+log(1+t))
  std::vector<double> mass;          // |u|_{L^1_dmu}
  std::vector<double> energy_ratio;  // (|grad u|^2 + |d_t u|^2) (1+t)^2 (1+log(1+t))^2
};

/// Weighted decay ratios along a completed supercritical run, from t_min on.
GlobalDecayReport global_decay_report(const SemilinearRun& run, double t_min = 10.0);

}  // namespace dwlab
