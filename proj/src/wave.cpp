#include "dwlab/wave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dwlab/detail/leapfrog.hpp"

namespace dwlab {

double wave_time_step(const RadialGrid& g, const WaveConfig& cfg) {
  const double dt = cfg.dt > 0.0 ? cfg.dt : cfg.cfl_safety * g.dr;
  if (dt > cfg.cfl_safety * g.dr * (1.0 + 1e-12)) {
    throw std::invalid_argument("wave_time_step: dt violates the CFL bound");
  }
  return dt;
}

double wave_domain_radius(double r_supp, double horizon, const WaveConfig& cfg) {
  return r_supp + horizon + cfg.support_margin;
}

namespace {

void check_support(const RadialField& g, double T, const WaveConfig& cfg) {
  if (!cfg.enforce_support) return;
  const double needed = wave_domain_radius(support_radius(g), T, cfg);
  if (needed > g.grid.r_max + 1e-12) {
    throw std::invalid_argument(
        "wave evolve: data support too wide for the horizon on this grid");
  }
}

WaveSample make_sample(const RadialGrid& grid, double t, double dt,
                       const std::vector<double>& uprev, const std::vector<double>& u,
                       const std::vector<double>& unext,
                       const std::vector<double>& datum, bool first) {
  WaveSample s;
  s.t = t;
  s.u = RadialField(grid, u);
  RadialField v(grid);
  if (first) {
    v.values = datum;
    v[0] = 0.0;
    v[grid.n - 1] = 0.0;
  } else {
    for (int i = 0; i < grid.n; ++i) v[i] = (unext[i] - uprev[i]) / (2.0 * dt);
  }
  s.v = std::move(v);
  RadialField un(grid, unext);
  RadialField du(grid);
  for (int i = 0; i < grid.n; ++i) du[i] = (unext[i] - u[i]) / dt;
  s.staggered_energy = 0.5 * l2_inner(du, du) + 0.5 * dirichlet_form(s.u, un);
  return s;
}

}  // namespace

WaveTrajectory linear_evolve(const RadialField& g, double T, const WaveConfig& cfg,
                             const std::vector<double>& output_times) {
  if (T <= 0.0) throw std::invalid_argument("linear_evolve: horizon must be positive");
  check_support(g, T, cfg);
  const double dt_req = wave_time_step(g.grid, cfg);
  const int total = std::max(1, static_cast<int>(std::ceil(T / dt_req - 1e-12)));
  const double dt = T / total;
  const std::vector<int> sample_steps = detail::steps_for_times(output_times, dt, total);

  WaveTrajectory traj;
  traj.grid = GridMeta{g.grid.r_max, g.grid.n, dt};
  traj.samples.reserve(sample_steps.size());
  detail::leapfrog_run(
      g.grid, g.values, dt, sample_steps, detail::PowerSource::none(),
      std::numeric_limits<double>::infinity(), [](int, const std::vector<double>&) {},
      [&](int step, double t, const std::vector<double>& uprev,
          const std::vector<double>& u, const std::vector<double>& unext) {
        traj.samples.push_back(
            make_sample(g.grid, t, dt, uprev, u, unext, g.values, step == 0));
      });
  return traj;
}

ReducedTrajectory reduced_line_evolve(const RadialField& g, double T,
                                      const WaveConfig& cfg,
                                      const std::vector<double>& output_times) {
  if (T <= 0.0) throw std::invalid_argument("reduced_line_evolve: horizon must be positive");
  check_support(g, T, cfg);
  const RadialGrid& grid = g.grid;
  const double dy = grid.dr;
  const double dt = wave_time_step(grid, cfg);
  const int total = std::max(1, static_cast<int>(std::ceil(T / dt - 1e-12)));
  const double dt_eff = T / total;

  // Symmetric line grid y_j = (j - mid) * dy, j = 0..2(n-1); node mid sits at
  // y = 0 (the obstacle boundary r = 1) and node mid + i at r = 1 + i dr.
  const int n = grid.n;
  const int m = 2 * n - 1;
  const int mid = n - 1;
  std::vector<double> pot(m), w0(m);
  for (int j = 0; j < m; ++j) {
    const double y = (j - mid) * dy;
    const double a = std::abs(y) + 1.0;
    pot[j] = 0.25 * (1.0 / (a * a) + 1.0);
    const double r = std::abs(y) + 1.0;
    const int i = std::abs(j - mid);
    const double gval = i < n ? g[i] : 0.0;
    w0[j] = (j >= mid ? 1.0 : -1.0) * std::sqrt(r) * gval;
  }
  w0[mid] = 0.0;

  const std::vector<int> sample_steps = detail::steps_for_times(output_times, dt_eff, total);

  ReducedTrajectory out;
  out.potential_min = *std::min_element(pot.begin(), pot.end());
  out.potential_max = *std::max_element(pot.begin(), pot.end());
  out.recovered.grid = GridMeta{grid.r_max, grid.n, dt_eff};

  const double dt2 = dt_eff * dt_eff;
  const double inv_dy2 = 1.0 / (dy * dy);
  std::vector<double> uprev(m, 0.0), u(m, 0.0), unew(m, 0.0);
  for (int j = 1; j + 1 < m; ++j) u[j] = dt_eff * w0[j];

  auto emit = [&](int step, double t, const std::vector<double>& up,
                  const std::vector<double>& uc, const std::vector<double>& un) {
    WaveSample s;
    s.t = t;
    RadialField ru(grid), rv(grid);
    const double damp = std::exp(-0.5 * t);
    for (int i = 0; i < n; ++i) {
      const double r = grid.radius(i);
      const double scale = damp / std::sqrt(r);
      const double wc = uc[mid + i];
      const double wdot = step == 0 ? w0[mid + i] : (un[mid + i] - up[mid + i]) / (2.0 * dt_eff);
      ru[i] = scale * wc;
      rv[i] = scale * (wdot - 0.5 * wc);
    }
    ru[0] = 0.0;
    ru[n - 1] = 0.0;
    s.u = std::move(ru);
    s.v = std::move(rv);
    out.recovered.samples.push_back(std::move(s));
  };

  auto next_sample = sample_steps.begin();
  if (*next_sample == 0) {
    emit(0, 0.0, uprev, uprev, u);
    ++next_sample;
  }
  double center_abs = 0.0;
  for (int step = 1; step <= total; ++step) {
    for (int j = 1; j + 1 < m; ++j) {
      const double lap = (u[j + 1] - 2.0 * u[j] + u[j - 1]) * inv_dy2;
      unew[j] = dt2 * (lap + pot[j] * u[j]) + 2.0 * u[j] - uprev[j];
    }
    unew[0] = 0.0;
    unew[m - 1] = 0.0;
    center_abs = std::max(center_abs, std::abs(unew[mid]));
    if (next_sample != sample_steps.end() && *next_sample == step) {
      emit(step, step * dt_eff, uprev, u, unew);
      ++next_sample;
    }
    std::swap(uprev, u);
    std::swap(u, unew);
  }
  out.max_center_abs = center_abs;
  return out;
}

PositivityReport positivity_check(const RadialField& g, double T, const WaveConfig& cfg) {
  PositivityReport rep;
  rep.data_sup = lp_norm(g, std::numeric_limits<double>::infinity(), Measure::Lebesgue);
  for (double v : g.values) {
    if (v < 0.0) return rep;  // precondition unmet: applicable stays false
  }
  rep.applicable = true;
  std::vector<double> outputs;
  for (double t = 0.0; t <= T + 1e-9; t += std::max(T / 64.0, wave_time_step(g.grid, cfg))) {
    outputs.push_back(std::min(t, T));
  }
  double lo_radial = 0.0, lo_reduced = 0.0;
  const WaveTrajectory radial = linear_evolve(g, T, cfg, outputs);
  for (const WaveSample& s : radial.samples) {
    lo_radial = std::min(lo_radial, *std::min_element(s.u.values.begin(), s.u.values.end()));
  }
  const ReducedTrajectory reduced = reduced_line_evolve(g, T, cfg, outputs);
  for (const WaveSample& s : reduced.recovered.samples) {
    lo_reduced = std::min(lo_reduced, *std::min_element(s.u.values.begin(), s.u.values.end()));
  }
  rep.min_radial = lo_radial;
  rep.min_reduced = lo_reduced;
  return rep;
}

ContractionReport weighted_mass_contraction_check(const RadialField& g,
                                                  const std::vector<double>& times,
                                                  const WaveConfig& cfg) {
  ContractionReport rep;
  const double mass = lp_norm(g, 1.0, Measure::LogWeighted);
  if (mass <= 0.0) {
    rep.times = times;
    rep.ratios.assign(times.size(), 0.0);
    return rep;
  }
  const double T = *std::max_element(times.begin(), times.end());
  const WaveTrajectory traj = linear_evolve(g, T, cfg, times);
  for (const WaveSample& s : traj.samples) {
    if (s.t <= 0.0) continue;
    const double num = lp_norm(s.u, 1.0, Measure::LogWeighted);
    rep.times.push_back(s.t);
    rep.ratios.push_back(num / (-std::expm1(-s.t) * mass));
  }
  rep.max_ratio = rep.ratios.empty()
                      ? 0.0
                      : *std::max_element(rep.ratios.begin(), rep.ratios.end());
  return rep;
}

MatsumuraGapReport matsumura_gap_report(const RadialField& g,
                                        const std::vector<double>& times,
                                        const WaveConfig& wcfg, const HeatConfig& hcfg) {
  for (double t : times) {
    if (t < 1.0) {
      throw std::invalid_argument("matsumura_gap_report: times must be >= 1");
    }
  }
  MatsumuraGapReport rep;
  const double T = *std::max_element(times.begin(), times.end());
  const WaveTrajectory wave = linear_evolve(g, T, wcfg, times);
  rep.grid = wave.grid;
  const double gnorm = lp_norm(g, 2.0, Measure::Lebesgue);
  if (gnorm <= 0.0) {
    rep.times = times;
    rep.grad_ratios.assign(times.size(), 0.0);
    rep.dt_ratios.assign(times.size(), 0.0);
    return rep;
  }
  // Evolve the heat flow through the exact sampled times of the wave run.
  std::vector<double> snap_times;
  for (const WaveSample& s : wave.samples) {
    if (s.t > 0.0) snap_times.push_back(s.t);
  }
  HeatConfig hc = hcfg;
  if (hc.dt <= 0.0) hc.dt = wave.grid.dt;
  const std::vector<RadialField> heat = heat_evolve_times(g, snap_times, hc);
  const RadialGrid& grid = g.grid;
  std::size_t hk = 0;
  for (const WaveSample& s : wave.samples) {
    if (s.t <= 0.0) continue;
    const RadialField& h = heat[hk++];
    RadialField diff(grid);
    for (int i = 0; i < grid.n; ++i) diff[i] = s.u[i] - h[i];
    const RadialField heat_dt = apply_laplacian(h);
    RadialField ddt(grid);
    for (int i = 0; i < grid.n; ++i) ddt[i] = s.v[i] - heat_dt[i];
    rep.times.push_back(s.t);
    rep.grad_ratios.push_back(std::pow(s.t, 1.5) * std::sqrt(grad_norm_sq(diff)) / gnorm);
    rep.dt_ratios.push_back(s.t * s.t * lp_norm(ddt, 2.0, Measure::Lebesgue) / gnorm);
  }
  rep.grad_constant = *std::max_element(rep.grad_ratios.begin(), rep.grad_ratios.end());
  rep.dt_constant = *std::max_element(rep.dt_ratios.begin(), rep.dt_ratios.end());
  return rep;
}

LogMatsumuraReport log_matsumura_report(const RadialField& g, double q,
                                        const std::vector<double>& times,
                                        const WaveConfig& cfg) {
  if (!(q >= 1.0 && q <= 2.0)) {
    throw std::invalid_argument("log_matsumura_report: q must lie in [1, 2]");
  }
  LogMatsumuraReport rep;
  rep.q = q;
  const double data = lp_norm(g, q, Measure::LogWeighted) + lp_norm(g, 2.0, Measure::Lebesgue);
  if (data <= 0.0) {
    rep.times = times;
    rep.grad_ratios.assign(times.size(), 0.0);
    rep.dt_ratios.assign(times.size(), 0.0);
    return rep;
  }
  const double T = *std::max_element(times.begin(), times.end());
  const WaveTrajectory traj = linear_evolve(g, T, cfg, times);
  for (const WaveSample& s : traj.samples) {
    const double rate = std::pow(decay_weight(s.t), 1.0 / q);
    rep.times.push_back(s.t);
    rep.grad_ratios.push_back(std::sqrt(grad_norm_sq(s.u)) / (rate * data));
    rep.dt_ratios.push_back(lp_norm(s.v, 2.0, Measure::Lebesgue) * std::sqrt(1.0 + s.t) /
                            (rate * data));
  }
  rep.grad_constant = *std::max_element(rep.grad_ratios.begin(), rep.grad_ratios.end());
  rep.dt_constant = *std::max_element(rep.dt_ratios.begin(), rep.dt_ratios.end());
  return rep;
}

}  // namespace dwlab
