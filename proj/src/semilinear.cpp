#include "dwlab/semilinear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dwlab/detail/leapfrog.hpp"

namespace dwlab {

namespace {

double resolved_dt(const RadialGrid& g, double dt, double cfl) {
  const double step = dt > 0.0 ? dt : cfl * g.dr;
  if (step > cfl * g.dr * (1.0 + 1e-12)) {
    throw std::invalid_argument("semilinear_evolve: dt violates the CFL bound");
  }
  return step;
}

}  // namespace

SemilinearRun semilinear_evolve(const RadialField& g, double T_horizon,
                                const SemilinearConfig& cfg) {
  if (!(cfg.p > 1.0)) throw std::invalid_argument("semilinear_evolve: need p > 1");
  if (!(cfg.epsilon >= 0.0)) throw std::invalid_argument("semilinear_evolve: need eps >= 0");
  if (!(T_horizon > 0.0)) throw std::invalid_argument("semilinear_evolve: need T > 0");

  const RadialGrid& grid = g.grid;
  const double dt_req = resolved_dt(grid, cfg.dt, cfg.cfl_safety);
  const int total = std::max(1, static_cast<int>(std::ceil(T_horizon / dt_req - 1e-12)));
  const double dt = T_horizon / total;

  std::vector<double> w(grid.n, 0.0);
  for (int i = 0; i < grid.n; ++i) w[static_cast<std::size_t>(i)] = cfg.epsilon * g[i];
  w.front() = 0.0;
  w.back() = 0.0;

  // Output cadence plus explicitly requested state times.
  std::vector<double> sample_times = cfg.state_times;
  const int cadence = std::max(1, total / std::max(1, cfg.output_samples));
  for (int s = 0; s <= total; s += cadence) sample_times.push_back(s * dt);
  std::vector<int> sample_steps = detail::steps_for_times(sample_times, dt, total);

  std::vector<int> state_steps;
  for (double t : cfg.state_times) {
    state_steps.push_back(static_cast<int>(std::llround(t / dt)));
  }

  SemilinearRun run;
  run.horizon = T_horizon;
  run.p = cfg.p;
  run.epsilon = cfg.epsilon;
  run.dt = dt;
  run.grid = GridMeta{grid.r_max, grid.n, dt};

  const detail::PowerSource source = cfg.source_enabled
                                         ? detail::PowerSource::power(cfg.p)
                                         : detail::PowerSource::none();
  const detail::PowerSource recorder = detail::PowerSource::power(cfg.p);

  double running_xt = 0.0;
  auto on_step = [&](int level, const std::vector<double>& u) {
    if (!cfg.record_source) return;
    std::vector<double> f(u.size());
    if (cfg.source_enabled) {
      for (std::size_t i = 0; i < u.size(); ++i) f[i] = recorder(u[i]);
    }
    if (static_cast<int>(run.source_history.size()) == level) {
      run.source_history.push_back(std::move(f));
    }
  };
  auto on_sample = [&](int step, double t, const std::vector<double>& uprev,
                       const std::vector<double>& ucur, const std::vector<double>& unext) {
    RadialField u(grid, ucur);
    RadialField v(grid);
    if (step == 0) {
      for (int i = 1; i + 1 < grid.n; ++i) v[i] = cfg.epsilon * g[i];
    } else {
      for (int i = 0; i < grid.n; ++i) v[i] = (unext[i] - uprev[i]) / (2.0 * dt);
    }
    FunctionalSample fs;
    fs.t = t;
    fs.mass_dmu = lp_norm(u, 1.0, Measure::LogWeighted);
    fs.grad_l2 = std::sqrt(grad_norm_sq(u));
    fs.dtu_l2 = lp_norm(v, 2.0, Measure::Lebesgue);
    fs.sup = lp_norm(u, std::numeric_limits<double>::infinity(), Measure::Lebesgue);
    running_xt = std::max(running_xt, fs.mass_dmu + fs.grad_l2 / decay_weight(t));
    fs.xt = running_xt;
    run.series.push_back(fs);
    if (std::find(state_steps.begin(), state_steps.end(), step) != state_steps.end()) {
      run.state_times.push_back(t);
      run.states.push_back(std::move(u));
    }
  };

  const detail::LeapfrogOutcome outcome = detail::leapfrog_run(
      grid, w, dt, sample_steps, source, cfg.blow_threshold, on_step, on_sample);
  if (outcome.blew_up) {
    run.status = RunStatus::BlewUp;
    run.t_end = outcome.t_stop;
  } else {
    run.status = RunStatus::Completed;
    run.t_end = T_horizon;
  }
  return run;
}

BlowupDecision confirm_blowup(const RadialField& g, double T_horizon,
                              const SemilinearConfig& cfg, double stability_rtol,
                              int max_refines) {
  BlowupDecision decision;
  SemilinearConfig work = cfg;
  work.record_source = false;
  work.state_times.clear();
  work.output_samples = 64;
  work.dt = work.dt > 0.0 ? work.dt : work.cfl_safety * g.grid.dr;

  SemilinearRun run = semilinear_evolve(g, T_horizon, work);
  if (run.status != RunStatus::BlewUp) return decision;
  decision.blew_up = true;
  decision.history.push_back(run.t_end);
  decision.t_cross = run.t_end;
  for (int k = 0; k < max_refines; ++k) {
    work.dt *= 0.5;
    run = semilinear_evolve(g, T_horizon, work);
    if (run.status != RunStatus::BlewUp) {
      // The refined run outlived the horizon: treat as unstable measurement.
      decision.stable = false;
      return decision;
    }
    decision.history.push_back(run.t_end);
    const double prev = decision.t_cross;
    decision.t_cross = run.t_end;
    if (std::abs(run.t_end - prev) <= stability_rtol * run.t_end) {
      decision.stable = true;
      return decision;
    }
  }
  decision.stable = false;
  return decision;
}

double lifespan_domain_radius(double r_supp, double horizon, const LifespanConfig& cfg) {
  const double propagation = r_supp + horizon + cfg.wave_margin;
  const double diffusive = r_supp + cfg.wave_margin +
                           std::sqrt(std::max(4.0 * horizon * std::log(1.0 / cfg.tail_tol), 1.0));
  return std::min(propagation, diffusive);
}

LifespanRecord lifespan_estimate(double p, double epsilon, const LifespanConfig& cfg) {
  if (!(p > 1.0)) throw std::invalid_argument("lifespan_estimate: need p > 1");
  if (!(epsilon > 0.0)) throw std::invalid_argument("lifespan_estimate: need eps > 0");

  const double r_max = lifespan_domain_radius(cfg.bump_hi, cfg.horizon, cfg);
  const int n = std::max(3, static_cast<int>(std::ceil((r_max - 1.0) / cfg.dr)) + 1);
  const RadialGrid grid = build_grid(r_max, n);
  const RadialField g = normalize_combined(
      make_bump(grid, cfg.bump_lo, cfg.bump_hi, cfg.bump_power), cfg.data_scale);

  SemilinearConfig scfg;
  scfg.p = p;
  scfg.epsilon = epsilon;
  scfg.cfl_safety = cfg.cfl_safety;
  scfg.blow_threshold = cfg.blow_threshold;

  LifespanRecord rec;
  rec.p = p;
  rec.epsilon = epsilon;
  rec.grid_n = grid.n;

  const BlowupDecision decision =
      confirm_blowup(g, cfg.horizon, scfg, cfg.stability_rtol, cfg.max_refines);
  if (!decision.blew_up) {
    rec.T_measured = cfg.horizon;
    rec.completed_horizon = true;
    rec.converged = false;
    rec.dt = scfg.cfl_safety * grid.dr;
  } else {
    rec.T_measured = decision.t_cross;
    rec.converged = decision.stable;
    rec.dt = scfg.cfl_safety * grid.dr / std::pow(2.0, decision.history.size() - 1.0);
  }
  rec.Q_value = std::pow(epsilon, p - 1.0) * decay_weight_integral(rec.T_measured, p);
  return rec;
}

DuhamelReport duhamel_consistency_check(const SemilinearRun& run, const RadialField& g) {
  if (run.status != RunStatus::Completed) {
    throw std::invalid_argument("duhamel_consistency_check: run must have completed");
  }
  if (run.states.empty() || run.source_history.empty()) {
    throw std::invalid_argument(
        "duhamel_consistency_check: run must carry states and the source history");
  }
  const RadialGrid& grid = g.grid;
  const double dt = run.dt;
  DuhamelReport rep;

  auto linear_at = [&](const std::vector<double>& data, int steps) {
    std::vector<double> result;
    if (steps == 0) {
      result.assign(data.size(), 0.0);
      return result;
    }
    detail::leapfrog_run(
        grid, data, dt, std::vector<int>{steps}, detail::PowerSource::none(),
        std::numeric_limits<double>::infinity(), [](int, const std::vector<double>&) {},
        [&](int, double, const std::vector<double>&, const std::vector<double>& u,
            const std::vector<double>&) { result = u; });
    return result;
  };

  for (std::size_t k = 0; k < run.states.size(); ++k) {
    const double t = run.state_times[k];
    const int K = static_cast<int>(std::llround(t / dt));
    std::vector<double> data(grid.n);
    for (int i = 0; i < grid.n; ++i) data[static_cast<std::size_t>(i)] = run.epsilon * g[i];
    std::vector<double> rec_state = linear_at(data, K);
    for (int j = 0; j <= K; ++j) {
      const double weight = (j == 0 || j == K) ? 0.5 * dt : dt;
      if (j >= static_cast<int>(run.source_history.size())) break;
      const std::vector<double>& src = run.source_history[static_cast<std::size_t>(j)];
      bool all_zero = true;
      for (double v : src) {
        if (v != 0.0) {
          all_zero = false;
          break;
        }
      }
      if (all_zero) continue;
      const std::vector<double> piece = linear_at(src, K - j);
      for (std::size_t i = 0; i < rec_state.size(); ++i) rec_state[i] += weight * piece[i];
    }
    RadialField diff(grid);
    for (int i = 0; i < grid.n; ++i) diff[i] = run.states[k][i] - rec_state[static_cast<std::size_t>(i)];
    const double denom = lp_norm(run.states[k], 2.0, Measure::Lebesgue);
    const double dev = lp_norm(diff, 2.0, Measure::Lebesgue) / std::max(denom, 1e-300);
    rep.times.push_back(t);
    rep.rel_deviation.push_back(dev);
  }
  rep.max_rel_deviation =
      *std::max_element(rep.rel_deviation.begin(), rep.rel_deviation.end());
  return rep;
}

HeatComparisonResult heat_comparison_lifespan(const RadialField& f, double eps, double p,
                                              double horizon, const HeatConfig& cfg) {
  if (!(p > 1.0)) throw std::invalid_argument("heat_comparison_lifespan: need p > 1");
  for (double v : f.values) {
    if (v < 0.0) {
      throw std::invalid_argument("heat_comparison_lifespan: data must be nonnegative");
    }
  }
  const double budget = 1.0 / ((p - 1.0) * std::pow(eps, p - 1.0));

  // Geometric time ladder: resolves the early integrand and stays cheap at
  // horizon scale.
  std::vector<double> times;
  const double dt0 = cfg.dt > 0.0 ? cfg.dt : f.grid.dr;
  double t = dt0;
  while (t < horizon) {
    times.push_back(t);
    t *= 1.05;
  }
  times.push_back(horizon);

  HeatComparisonResult res;
  double integral = 0.0;
  double prev_t = 0.0;
  double prev_val = std::pow(
      lp_norm(f, std::numeric_limits<double>::infinity(), Measure::Lebesgue), p - 1.0);
  bool crossed = false;
  heat_scan(f, times, cfg, 16, [&](double tk, const RadialField& w) {
    if (crossed) return;
    const double val = std::pow(
        lp_norm(w, std::numeric_limits<double>::infinity(), Measure::Lebesgue), p - 1.0);
    const double add = 0.5 * (tk - prev_t) * (prev_val + val);
    if (integral + add >= budget) {
      const double need = budget - integral;
      const double frac = add > 0.0 ? need / add : 0.0;
      res.T = prev_t + frac * (tk - prev_t);
      res.integral = budget;
      crossed = true;
      return;
    }
    integral += add;
    prev_t = tk;
    prev_val = val;
  });
  if (!crossed) {
    res.T = horizon;
    res.hit_horizon = true;
    res.integral = integral;
  }
  return res;
}

GlobalDecayReport global_decay_report(const SemilinearRun& run, double t_min) {
  if (run.status != RunStatus::Completed) {
    throw std::invalid_argument("global_decay_report: run must have completed");
  }
  if (!(run.p > 2.0)) {
    throw std::invalid_argument("global_decay_report: needs a supercritical exponent");
  }
  GlobalDecayReport rep;
  for (const FunctionalSample& s : run.series) {
    if (s.t < t_min) continue;
    const double poly = 1.0 + s.t;
    const double logf = 1.0 + std::log1p(s.t);
    rep.times.push_back(s.t);
    rep.grad_ratio.push_back(s.grad_l2 * poly * logf);
    rep.dtu_ratio.push_back(s.dtu_l2 * std::pow(poly, 1.5) * logf);
    rep.mass.push_back(s.mass_dmu);
    rep.energy_ratio.push_back((s.grad_l2 * s.grad_l2 + s.dtu_l2 * s.dtu_l2) * poly * poly *
                               logf * logf);
  }
  return rep;
}

}  // namespace dwlab
