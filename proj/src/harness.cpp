#include "dwlab/harness.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <thread>

#include "dwlab/inequalities.hpp"
#include "dwlab/io.hpp"
#include "dwlab/modal.hpp"
#include "dwlab/wave.hpp"

namespace dwlab {

void parallel_for(int count, int jobs, const std::function<void(int)>& body) {
  const int workers = std::max(1, std::min(jobs, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

double expected_sub2_slope(double p) {
  if (!(p > 1.0 && p < 2.0)) {
    throw std::invalid_argument("expected_sub2_slope: need 1 < p < 2");
  }
  return (p - 1.0) / (2.0 - p);
}

FitResult fit_exponent(const std::vector<LifespanRecord>& records, FitModel model) {
  std::vector<const LifespanRecord*> usable;
  for (const LifespanRecord& r : records) {
    if (model == FitModel::Global) {
      usable.push_back(&r);
    } else if (r.converged && !r.completed_horizon && r.T_measured > 0.0) {
      usable.push_back(&r);
    }
  }
  FitResult fit;
  fit.points = static_cast<int>(usable.size());
  switch (model) {
    case FitModel::Sub2: {
      fit.model = "sub-2";
      if (usable.size() < 3) {
        throw std::invalid_argument("fit_exponent: need at least 3 converged records");
      }
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (const LifespanRecord* r : usable) {
        if (!(r->epsilon < 1.0)) {
          throw std::invalid_argument("fit_exponent: sub-2 fit needs epsilon < 1");
        }
        const double x = std::log(std::log(1.0 / r->epsilon) / r->epsilon);
        const double y = std::log(r->T_measured);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
      }
      const double m = static_cast<double>(usable.size());
      const double denom = m * sxx - sx * sx;
      fit.exponent = (m * sxy - sx * sy) / denom;
      const double intercept = (sy - fit.exponent * sx) / m;
      fit.constant = std::exp(intercept);
      double ss = 0.0;
      for (const LifespanRecord* r : usable) {
        const double x = std::log(std::log(1.0 / r->epsilon) / r->epsilon);
        const double y = std::log(r->T_measured);
        const double d = y - (intercept + fit.exponent * x);
        ss += d * d;
      }
      fit.residual = std::sqrt(ss / m);
      return fit;
    }
    case FitModel::CriticalQ: {
      fit.model = "critical-Q";
      if (usable.size() < 3) {
        throw std::invalid_argument("fit_exponent: need at least 3 converged records");
      }
      double lo = usable.front()->Q_value, hi = lo;
      double slog = 0.0;
      for (const LifespanRecord* r : usable) {
        lo = std::min(lo, r->Q_value);
        hi = std::max(hi, r->Q_value);
        slog += std::log(r->Q_value);
      }
      fit.constant = lo;
      fit.band_ratio = hi / lo;
      const double mean_log = slog / static_cast<double>(usable.size());
      double ss = 0.0;
      for (const LifespanRecord* r : usable) {
        const double d = std::log(r->Q_value) - mean_log;
        ss += d * d;
      }
      fit.residual = std::sqrt(ss / static_cast<double>(usable.size()));
      return fit;
    }
    case FitModel::Global: {
      fit.model = "global";
      if (usable.empty()) {
        throw std::invalid_argument("fit_exponent: no records");
      }
      double q_max = 0.0;
      int survived = 0;
      for (const LifespanRecord* r : usable) {
        if (r->completed_horizon) ++survived;
        q_max = std::max(q_max, r->Q_value);
      }
      fit.constant = q_max;
      fit.exponent = static_cast<double>(survived) / static_cast<double>(usable.size());
      return fit;
    }
  }
  return fit;
}

std::vector<LifespanRecord> run_sweep(const ExperimentConfig& cfg, int jobs) {
  if (cfg.epsilons.empty()) {
    throw std::invalid_argument("run_sweep: empty epsilon grid");
  }
  LifespanConfig lc;
  lc.dr = cfg.dr;
  lc.cfl_safety = cfg.cfl_safety;
  lc.blow_threshold = cfg.blow_threshold;
  lc.horizon = cfg.horizon;
  lc.stability_rtol = cfg.stability_rtol;
  lc.max_refines = cfg.max_refines;
  lc.bump_lo = cfg.data_lo;
  lc.bump_hi = cfg.data_hi;
  lc.bump_power = cfg.data_power;
  lc.data_scale = cfg.data_scale;

  std::vector<LifespanRecord> records(cfg.epsilons.size());
  parallel_for(static_cast<int>(cfg.epsilons.size()), jobs, [&](int i) {
    const double eps = cfg.epsilons[static_cast<std::size_t>(i)];
    try {
      records[static_cast<std::size_t>(i)] = lifespan_estimate(cfg.p, eps, lc);
    } catch (const std::exception&) {
      LifespanRecord failed;
      failed.p = cfg.p;
      failed.epsilon = eps;
      records[static_cast<std::size_t>(i)] = failed;
    }
  });
  return records;
}

namespace {

void ensure_dir(const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
}

RadialField config_data(const ExperimentConfig& cfg, const RadialGrid& grid) {
  return normalize_combined(make_bump(grid, cfg.data_lo, cfg.data_hi, cfg.data_power),
                            cfg.data_scale);
}

LemmaCheck check_row(const std::string& id, const std::string& desc, bool pass,
                     std::map<std::string, double> metrics) {
  LemmaCheck c;
  c.id = id;
  c.description = desc;
  c.pass = pass;
  c.metrics = std::move(metrics);
  return c;
}

}  // namespace

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  switch (kind) {
    case ExperimentKind::HeatDecay:
      cfg.times = {10.0, 100.0, 1000.0};
      break;
    case ExperimentKind::LinearEstimates:
      cfg.times = {1.0, 3.0, 10.0, 30.0, 100.0};
      break;
    case ExperimentKind::Inequalities:
      cfg.dr = 0.01;
      break;
    case ExperimentKind::LifespanSweep:
      cfg.p = 1.5;
      // Strong data pushes the blow-up window to small amplitudes, where the
      // scaling exponent is already visible at desk horizons.
      cfg.data_scale = 150.0;
      cfg.epsilons = {0.0207, 0.01178, 0.0067, 0.003815, 0.002171};
      cfg.horizon = 2500.0;
      cfg.dr = 0.05;
      cfg.max_refines = 1;
      break;
    case ExperimentKind::GlobalDecay:
      cfg.p = 3.0;
      cfg.horizon = 200.0;
      cfg.data_scale = 0.1;
      cfg.data_hi = 3.0;
      break;
    case ExperimentKind::SupersolutionCompare:
      cfg.p = 2.0;
      cfg.epsilons = {40.0, 25.0, 16.0};
      cfg.horizon = 1e5;
      cfg.dr = 0.1;
      break;
    case ExperimentKind::VerifyAll:
      break;
  }
  return cfg;
}

std::vector<LemmaCheck> run_heat_decay_experiment(const ExperimentConfig& cfg,
                                                  const std::string& out_dir) {
  ensure_dir(out_dir);
  HeatConfig hc;
  hc.rannacher_steps = cfg.rannacher_steps;
  hc.tol_tail = cfg.tol_tail;
  const double horizon = cfg.times.back();
  const double r_max = heat_domain_radius(cfg.data_hi, horizon, hc);
  const int n = static_cast<int>(std::ceil((r_max - 1.0) / cfg.dr)) + 1;
  const RadialGrid grid = build_grid(r_max, n);
  const RadialField f = config_data(cfg, grid);

  std::vector<LemmaCheck> checks;
  nlohmann::json all = nlohmann::json::array();
  for (double q : cfg.q_values) {
    const HeatDecayReport rep = heat_decay_report(f, q, cfg.times, hc);
    all.push_back(to_json(rep));
    const double first = rep.ratios.front();
    const double last = rep.ratios.back();
    // Nonnegative data approaches the envelope from below, so the honest
    // desk-scale statement is: either the ratio already descends, or it
    // saturates (shrinking increments, no runaway).
    bool saturating = last <= first;
    if (!saturating) {
      saturating = last <= 2.0 * std::max(first, 1e-300);
      for (std::size_t k = 2; k < rep.ratios.size() && saturating; ++k) {
        const double inc_prev = rep.ratios[k - 1] - rep.ratios[k - 2];
        const double inc = rep.ratios[k] - rep.ratios[k - 1];
        saturating = inc <= inc_prev + 1e-12;
      }
    }
    checks.push_back(check_row(
        "heat_decay_L2_q" + format_double(q),
        "weighted-data L2 decay rate of the heat flow saturates (no late growth)",
        saturating,
        {{"q", q}, {"rho_first", first}, {"rho_last", last}, {"max_ratio", rep.max_ratio},
         {"max_pointwise", rep.max_pointwise_ratio}}));
  }
  write_json(out_dir + "/heat_decay.json", all);
  return checks;
}

std::vector<LemmaCheck> run_linear_estimates_experiment(const ExperimentConfig& cfg,
                                                        const std::string& out_dir) {
  ensure_dir(out_dir);
  const double horizon = cfg.times.back();
  WaveConfig wc;
  wc.cfl_safety = cfg.cfl_safety;
  const double r_max = wave_domain_radius(cfg.data_hi, horizon, wc);
  const int n = static_cast<int>(std::ceil((r_max - 1.0) / cfg.dr)) + 1;
  const RadialGrid grid = build_grid(r_max, n);
  const RadialField g = config_data(cfg, grid);
  HeatConfig hc;
  hc.rannacher_steps = cfg.rannacher_steps;
  hc.tol_tail = cfg.tol_tail;

  std::vector<LemmaCheck> checks;

  const WaveTrajectory traj = linear_evolve(g, horizon, wc, cfg.times);
  const double g2 = lp_norm(g, 2.0, Measure::Lebesgue);
  double worst_energy = 0.0;
  for (const WaveSample& s : traj.samples) {
    const double e = grad_norm_sq(s.u) + std::pow(lp_norm(s.v, 2.0, Measure::Lebesgue), 2);
    worst_energy = std::max(worst_energy, e);
  }
  checks.push_back(check_row("energy_bound",
                             "wave energy stays below the squared data norm",
                             worst_energy <= g2 * g2 * 1.01,
                             {{"worst_energy", worst_energy}, {"data_norm_sq", g2 * g2}}));

  const ContractionReport mass =
      weighted_mass_contraction_check(g, {0.1, 1.0, 10.0, std::min(50.0, horizon)}, wc);
  checks.push_back(check_row("l1dmu_contraction",
                             "weighted mass of the linear flow contracts like 1 - e^{-t}",
                             mass.max_ratio <= 1.02, {{"max_ratio", mass.max_ratio}}));

  const MatsumuraGapReport gap = matsumura_gap_report(g, cfg.times, wc, hc);
  checks.push_back(check_row(
      "matsumura_gap",
      "wave-heat gap decays at the classical rates (no growth across times)",
      gap.grad_ratios.back() <= 3.0 * gap.grad_ratios.front() &&
          gap.dt_ratios.back() <= 3.0 * gap.dt_ratios.front(),
      {{"grad_constant", gap.grad_constant}, {"dt_constant", gap.dt_constant}}));
  write_json(out_dir + "/matsumura_gap.json", to_json(gap));

  nlohmann::json logs = nlohmann::json::array();
  for (double q : cfg.q_values) {
    const LogMatsumuraReport rep = log_matsumura_report(g, q, cfg.times, wc);
    logs.push_back(to_json(rep));
    double earlier_max = 0.0;
    for (std::size_t k = 0; k + 1 < rep.grad_ratios.size(); ++k) {
      earlier_max = std::max(earlier_max, rep.grad_ratios[k]);
    }
    checks.push_back(check_row(
        "log_matsumura_q" + format_double(q),
        "log-weighted decay rates for weighted data stay bounded",
        rep.grad_ratios.back() <= 1.2 * earlier_max,
        {{"grad_constant", rep.grad_constant}, {"dt_constant", rep.dt_constant},
         {"last_ratio", rep.grad_ratios.back()}}));
  }
  write_json(out_dir + "/log_matsumura.json", logs);

  const double pos_T = std::min(horizon, 50.0);
  const PositivityReport pos = positivity_check(g, pos_T, wc);
  const double tol = 1e-6 * pos.data_sup;
  checks.push_back(check_row("positivity",
                             "nonnegative data keeps both solvers nonnegative",
                             pos.applicable && pos.min_radial >= -tol &&
                                 pos.min_reduced >= -tol,
                             {{"min_radial", pos.min_radial},
                              {"min_reduced", pos.min_reduced},
                              {"tolerance", tol}}));

  const std::vector<double> modes = log_spaced(1e-3, 1e3, 25);
  const std::vector<double> mt = log_spaced(1.0, 100.0, 60);
  const ModalBounds modal = modal_matsumura_verify(modes, mt);
  const std::vector<double> dense_modes = log_spaced(1e-3, 1e3, 201);
  const std::vector<double> dense_t = log_spaced(1.0, 100.0, 400);
  const ModalBounds modal_dense = modal_matsumura_verify(dense_modes, dense_t);
  const double stab1 = modal_dense.c1_uniform / modal.c1_uniform;
  const double stab2 = modal_dense.c2_uniform / modal.c2_uniform;
  checks.push_back(check_row(
      "modal_matsumura",
      "uniform modal constants are stable under mode/time grid refinement",
      stab1 <= 2.0 && stab2 <= 2.0,
      {{"c1_uniform", modal.c1_uniform}, {"c2_uniform", modal.c2_uniform},
       {"c1_refined", modal_dense.c1_uniform}, {"c2_refined", modal_dense.c2_uniform}}));

  write_trajectory_csv(out_dir + "/linear_trajectory.csv", traj, grid);
  return checks;
}

std::vector<LemmaCheck> run_inequalities_experiment(const ExperimentConfig& cfg,
                                                    const std::string& out_dir) {
  ensure_dir(out_dir);
  const RadialGrid grid = build_grid(60.0, static_cast<int>(std::ceil(59.0 / cfg.dr)) + 1);
  FamilySpec family;
  family.fuzz_count = 60;
  family.seed = cfg.seed;

  std::vector<LemmaCheck> checks;
  nlohmann::json out = nlohmann::json::array();

  const InequalityReport hardy = constant_sweep(InequalityKind::Hardy, family, 2.0, grid);
  out.push_back(to_json(hardy));
  checks.push_back(check_row("critical_hardy",
                             "boundary Hardy quotient stays below 1",
                             hardy.max_ratio <= 1.001,
                             {{"max_ratio", hardy.max_ratio},
                              {"refinement_drift", hardy.refinement_drift}}));

  for (double q : {1.5, 2.0, 3.0}) {
    const InequalityReport gn = constant_sweep(InequalityKind::GN, family, q, grid);
    out.push_back(to_json(gn));
    checks.push_back(check_row("gn_q" + format_double(q),
                               "interpolation quotient bounded with stable constant",
                               gn.refinement_drift <= 0.10,
                               {{"fitted_constant", gn.fitted_constant},
                                {"refinement_drift", gn.refinement_drift}}));
    const InequalityReport lgn = constant_sweep(InequalityKind::LogGN, family, q, grid);
    out.push_back(to_json(lgn));
    checks.push_back(check_row("log_gn_q" + format_double(q),
                               "log-weighted interpolation quotient bounded",
                               lgn.refinement_drift <= 0.10,
                               {{"fitted_constant", lgn.fitted_constant},
                                {"refinement_drift", lgn.refinement_drift}}));
  }
  write_json(out_dir + "/inequalities.json", out);
  return checks;
}

std::vector<LemmaCheck> run_lifespan_sweep_experiment(const ExperimentConfig& cfg,
                                                      const std::string& out_dir, int jobs) {
  ensure_dir(out_dir);
  const std::vector<LifespanRecord> records = run_sweep(cfg, jobs);
  write_sweep_csv(out_dir + "/lifespan_sweep.csv", records);

  std::vector<LemmaCheck> checks;
  bool monotone = true;
  for (std::size_t i = 0; i + 1 < records.size(); ++i) {
    // epsilons descend or ascend; compare against epsilon ordering directly
    const LifespanRecord& a = records[i];
    const LifespanRecord& b = records[i + 1];
    if (!a.converged || !b.converged) continue;
    if (a.epsilon < b.epsilon && a.T_measured * 1.02 < b.T_measured) monotone = false;
    if (a.epsilon > b.epsilon && b.T_measured * 1.02 < a.T_measured) monotone = false;
  }
  checks.push_back(check_row("lifespan_monotone",
                             "measured lifespan grows as the data amplitude shrinks",
                             monotone, {}));
  if (cfg.p < 2.0) {
    const FitResult fit = fit_exponent(records, FitModel::Sub2);
    const double want = expected_sub2_slope(cfg.p);
    checks.push_back(check_row("lifespan_sub2_slope",
                               "lifespan scaling exponent matches (p-1)/(2-p)",
                               std::abs(fit.exponent - want) <= 0.25,
                               {{"slope", fit.exponent}, {"expected", want},
                                {"residual", fit.residual},
                                {"points", static_cast<double>(fit.points)}}));
  } else if (cfg.p == 2.0) {
    const FitResult fit = fit_exponent(records, FitModel::CriticalQ);
    checks.push_back(check_row("critical_Q_band",
                               "critical-exponent Q values stay in a narrow band",
                               fit.band_ratio <= 5.0,
                               {{"band_ratio", fit.band_ratio}, {"min_Q", fit.constant},
                                {"points", static_cast<double>(fit.points)}}));
  }
  return checks;
}

std::vector<LemmaCheck> run_global_decay_experiment(const ExperimentConfig& cfg,
                                                    const std::string& out_dir) {
  ensure_dir(out_dir);
  WaveConfig wc;
  const double r_max = wave_domain_radius(cfg.data_hi, cfg.horizon, wc);
  const int n = static_cast<int>(std::ceil((r_max - 1.0) / cfg.dr)) + 1;
  const RadialGrid grid = build_grid(r_max, n);
  const RadialField g = config_data(cfg, grid);

  SemilinearConfig sc;
  sc.p = cfg.p;
  sc.epsilon = 1.0;
  sc.cfl_safety = cfg.cfl_safety;
  sc.blow_threshold = cfg.blow_threshold;
  sc.output_samples = 400;
  const SemilinearRun run = semilinear_evolve(g, cfg.horizon, sc);
  write_series_csv(out_dir + "/global_decay_series.csv", run.series);

  std::vector<LemmaCheck> checks;
  if (run.status != RunStatus::Completed) {
    checks.push_back(check_row("global_existence",
                               "small supercritical data survives the horizon", false,
                               {{"t_end", run.t_end}}));
    return checks;
  }
  checks.push_back(check_row("global_existence",
                             "small supercritical data survives the horizon", true,
                             {{"t_end", run.t_end}}));
  const GlobalDecayReport rep = global_decay_report(run);
  auto ratio_ok = [](const std::vector<double>& v) {
    return v.empty() || v.back() <= 2.0 * v.front();
  };
  checks.push_back(check_row(
      "global_decay_ratios",
      "weighted gradient/velocity/energy ratios stay flat to the horizon",
      ratio_ok(rep.grad_ratio) && ratio_ok(rep.dtu_ratio) && ratio_ok(rep.energy_ratio) &&
          ratio_ok(rep.mass),
      {{"grad_first", rep.grad_ratio.empty() ? 0.0 : rep.grad_ratio.front()},
       {"grad_last", rep.grad_ratio.empty() ? 0.0 : rep.grad_ratio.back()},
       {"mass_last", rep.mass.empty() ? 0.0 : rep.mass.back()}}));
  return checks;
}

std::vector<LemmaCheck> run_supersolution_experiment(const ExperimentConfig& cfg,
                                                     const std::string& out_dir) {
  ensure_dir(out_dir);
  std::vector<LemmaCheck> checks;
  const SupersolutionScan scan = supersolution_residual_scan(2.0, 100000);
  checks.push_back(check_row("supersolution_residual",
                             "comparison profile is a supersolution on the inner region",
                             scan.min_residual >= -1e-12 && scan.region2_min_margin >= 0.0,
                             {{"min_residual", scan.min_residual},
                              {"region2_margin", scan.region2_min_margin}}));

  const double kappa2 = linfty_kernel_constant(2.0);
  checks.push_back(check_row("kernel_constant",
                             "planar kernel constant matches 1/sqrt(8 pi) at q = 2",
                             std::abs(kappa2 - 0.19947114020071635) <= 1e-12,
                             {{"kappa_2", kappa2}}));

  HeatConfig hc;
  hc.rannacher_steps = cfg.rannacher_steps;
  hc.tol_tail = cfg.tol_tail;
  const double r_max = heat_domain_radius(cfg.data_hi, cfg.horizon, hc);
  const int n = static_cast<int>(std::ceil((r_max - 1.0) / std::max(cfg.dr, 0.05))) + 1;
  const RadialGrid grid = build_grid(r_max, n);
  const RadialField f = config_data(cfg, grid);

  nlohmann::json rows = nlohmann::json::array();
  std::vector<double> horizons;
  bool monotone = true;
  double prev_T = 0.0;
  for (double eps : cfg.epsilons) {
    const HeatComparisonResult res = heat_comparison_lifespan(f, eps, cfg.p, cfg.horizon, hc);
    rows.push_back({{"epsilon", eps},
                    {"T", res.T},
                    {"hit_horizon", res.hit_horizon},
                    {"integral", res.integral}});
    if (!res.hit_horizon) {
      if (prev_T > 0.0 && res.T < prev_T) monotone = false;
      prev_T = res.T;
      horizons.push_back(res.T);
    }
  }
  write_json(out_dir + "/heat_comparison.json", rows);
  checks.push_back(check_row("heat_comparison_lifespan",
                             "comparison lifespan grows as the amplitude shrinks",
                             monotone, {{"measured_points",
                                         static_cast<double>(horizons.size())}}));
  return checks;
}

bool emit_summary(const std::vector<LemmaCheck>& checks, const std::string& out_dir) {
  ensure_dir(out_dir);
  nlohmann::json rows = nlohmann::json::array();
  bool all_pass = true;
  for (const LemmaCheck& c : checks) {
    all_pass = all_pass && c.pass;
    rows.push_back({{"id", c.id},
                    {"description", c.description},
                    {"pass", c.pass},
                    {"metrics", c.metrics}});
  }
  write_json(out_dir + "/summary.json", rows);

  std::ofstream md(out_dir + "/summary.md");
  md << "# verification summary\n\n";
  md << "| check | status | description |\n";
  md << "|---|---|---|\n";
  for (const LemmaCheck& c : checks) {
    md << "| " << c.id << " | " << (c.pass ? "pass" : "FAIL") << " | " << c.description
       << " |\n";
  }
  md << "\n" << (all_pass ? "all checks passed\n" : "at least one check FAILED\n");
  return all_pass;
}

}  // namespace dwlab
