#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "dwlab/radial.hpp"

namespace dwlab::detail {

/// Pointwise source term for the second-order update.  The common exponents
/// get branch-free powers; everything else falls back to std::pow.
struct PowerSource {
  enum class Kind : std::uint8_t { None, ThreeHalves, Square, Cube, General };
  Kind kind = Kind::None;
  double p = 0.0;

  static PowerSource none() { return {}; }
  static PowerSource power(double p) {
    PowerSource s;
    s.p = p;
    if (p == 1.5) {
      s.kind = Kind::ThreeHalves;
    } else if (p == 2.0) {
      s.kind = Kind::Square;
    } else if (p == 3.0) {
      s.kind = Kind::Cube;
    } else {
      s.kind = Kind::General;
    }
    return s;
  }

  double operator()(double u) const {
    const double a = std::abs(u);
    switch (kind) {
      case Kind::None:
        return 0.0;
      case Kind::ThreeHalves:
        return a * std::sqrt(a);
      case Kind::Square:
        return a * a;
      case Kind::Cube:
        return a * a * a;
      case Kind::General:
        return std::pow(a, p);
    }
    return 0.0;
  }
};

struct LeapfrogOutcome {
  bool blew_up = false;
  double t_stop = 0.0;  // blow-up time, or the final sampled time
  int steps_done = 0;
  double dt = 0.0;
};

/// Damped leapfrog for u'' - Lap u + u' = source(u) with data (0, w),
/// homogeneous Dirichlet ends, damping averaged across the half-steps so the
/// update stays an explicit scalar solve:
///   (u+ - 2u + u-)/dt^2 + (u+ - u-)/(2dt) = Lap u + source(u).
/// The Taylor start u(dt) = dt (1 - dt/2) w matches the datum to O(dt^3).
///
/// `on_step(n, u_n)` fires once per computed level n = 0..N;
/// `on_sample(n, t_n, u_{n-1}, u_n, u_{n+1})` fires for each n in
/// sample_steps (sorted, deduplicated, last entry defines N >= 1).
template <class OnStep, class OnSample>
LeapfrogOutcome leapfrog_run(const RadialGrid& g, const std::vector<double>& w,
                             double dt, const std::vector<int>& sample_steps,
                             PowerSource source, double stop_threshold,
                             OnStep&& on_step, OnSample&& on_sample) {
  const int n = g.n;
  const int total = sample_steps.back();
  const double dt2 = dt * dt;
  const double inv_dr2 = 1.0 / (g.dr * g.dr);
  const double inv_2dr = 0.5 / g.dr;
  const double cm = 1.0 - 0.5 * dt;
  const double inv_cp = 1.0 / (1.0 + 0.5 * dt);

  std::vector<double> inv_r(n);
  for (int i = 0; i < n; ++i) inv_r[i] = 1.0 / g.radius(i);

  std::vector<double> uprev(n, 0.0), u(n, 0.0), unew(n, 0.0);
  for (int i = 1; i + 1 < n; ++i) u[i] = dt * (1.0 - 0.5 * dt) * w[i];

  on_step(0, uprev);  // level 0 is identically zero
  on_step(1, u);
  auto next_sample = sample_steps.begin();
  if (*next_sample == 0) {
    on_sample(0, 0.0, uprev, uprev, u);
    ++next_sample;
  }

  LeapfrogOutcome out;
  out.dt = dt;
  for (int step = 1; step <= total; ++step) {
    double sup = 0.0;
    for (int i = 1; i + 1 < n; ++i) {
      const double lap = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * inv_dr2 +
                         (u[i + 1] - u[i - 1]) * inv_2dr * inv_r[i];
      const double v = (dt2 * (lap + source(u[i])) + 2.0 * u[i] - cm * uprev[i]) * inv_cp;
      unew[i] = v;
      sup = std::max(sup, std::abs(v));
    }
    unew[0] = 0.0;
    unew[n - 1] = 0.0;
    out.steps_done = step;
    if (!std::isfinite(sup)) {
      out.blew_up = true;
      out.t_stop = step * dt;  // confirmation at the last finite level
      return out;
    }
    if (sup >= stop_threshold) {
      out.blew_up = true;
      out.t_stop = (step + 1) * dt;
      return out;
    }
    if (next_sample != sample_steps.end() && *next_sample == step) {
      on_sample(step, step * dt, uprev, u, unew);
      ++next_sample;
    }
    std::swap(uprev, u);
    std::swap(u, unew);
    if (step + 1 <= total) on_step(step + 1, u);
  }
  out.t_stop = total * dt;
  return out;
}

inline std::vector<int> steps_for_times(const std::vector<double>& times, double dt,
                                        int total) {
  std::vector<int> steps;
  steps.reserve(times.size() + 1);
  for (double t : times) {
    int s = static_cast<int>(std::llround(t / dt));
    steps.push_back(std::clamp(s, 0, total));
  }
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  if (steps.empty() || steps.back() != total) steps.push_back(total);
  return steps;
}

}  // namespace dwlab::detail
