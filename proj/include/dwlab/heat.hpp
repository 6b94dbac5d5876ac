#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "dwlab/radial.hpp"

namespace dwlab {

struct HeatConfig {
  double dt = 0.0;            // 0 means "use the grid spacing"
  int rannacher_steps = 2;    // initial fully implicit sub-steps
  double tail_margin = 1.0;   // multiplier in the outer-radius rule
  double tol_tail = 1e-10;    // Gaussian-tail budget at the outer boundary
};

/// Outer radius such that the Gaussian tail of data supported inside r_supp
/// stays below tol_tail up to time `horizon`:
/// r_supp + tail_margin * sqrt(4 * horizon * log(1/tol_tail)).
double heat_domain_radius(double r_supp, double horizon, const HeatConfig& cfg);

/// Dirichlet heat evolution on the grid of f by Crank-Nicolson stepping with
/// homogeneous boundary values at both ends; the first cfg.rannacher_steps
/// steps are fully implicit.  Returns the state at time t.  Rejects t < 0.
RadialField heat_evolve(const RadialField& f, double t, const HeatConfig& cfg);

/// Evolves through an increasing list of times, returning one state per time.
/// Long horizons use per-segment steps of max(dt, segment/min_segment_steps),
/// so late-time reports stay affordable without losing second order.
std::vector<RadialField> heat_evolve_times(const RadialField& f,
                                           const std::vector<double>& times,
                                           const HeatConfig& cfg,
                                           int min_segment_steps = 200);

/// Streaming form of heat_evolve_times: visit(t, state) fires per time
/// without keeping the whole batch alive.
void heat_scan(const RadialField& f, const std::vector<double>& times,
               const HeatConfig& cfg, int min_segment_steps,
               const std::function<void(double, const RadialField&)>& visit);

struct GridMeta {
  double r_max = 0.0;
  int n = 0;
  double dt = 0.0;
};

struct HeatDecayReport {
  double q = 1.0;
  std::vector<double> times;
  std::vector<double> ratios;            // t^(1/q-1/2) (1+log(1+t))^(1/q) |u|_2 / |f|_{L^q_dmu}
  double max_ratio = 0.0;
  std::vector<double> pointwise_ratios;  // per time: max_r u * t^(1/q) (1+log(1+t)) / ((1+log r) |f|_q)
  double max_pointwise_ratio = 0.0;
  GridMeta grid;
};

/// Measures the weighted-data decay rate of the heat semigroup and the
/// pointwise log-profile bound.  q must lie in [1, 2]; times positive
/// and increasing.
HeatDecayReport heat_decay_report(const RadialField& f, double q,
                                  const std::vector<double>& times,
                                  const HeatConfig& cfg);

/// Comparison profile U(r,t) = Phi * t^(-1/q) * exp(-r^2/(4t)) with
/// Phi = (1 + log r^2) / (2 + log t + log r^2), defined for t >= 4 and
/// 1 <= r <= sqrt(t).  q may be infinity (the t^(-1/q) factor becomes 1).
double supersolution_value(double r, double t, double q);

/// (1 - 1/q)^(1-1/q) * (4*pi)^(-1/q): the kernel constant in the planar
/// sup-norm bound |e^{tL}f|_inf <= kappa_q t^(-1/q) |f|_q.
double linfty_kernel_constant(double q);

struct SupersolutionScan {
  double min_residual = 0.0;   // min over samples of d_t U - Lap U (exact formula)
  double worst_r = 0.0;
  double worst_t = 0.0;
  std::size_t samples = 0;
  double region2_min_margin = 0.0;  // min over t of 2(1+log r) - (1+log(1+t)) at r = sqrt(t)
};

/// Evaluates the exact residual of the comparison profile at quasi-random
/// points of {1 <= r <= sqrt(t), 4 <= t <= 1e6} and the outer-region weight
/// comparison along r = sqrt(t).
SupersolutionScan supersolution_residual_scan(double q, std::size_t samples);

}  // namespace dwlab
