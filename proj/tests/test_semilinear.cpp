#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "dwlab/radial.hpp"
#include "dwlab/semilinear.hpp"
#include "dwlab/wave.hpp"
#include "oracle_helpers.hpp"

using namespace dwlab;

namespace {

RadialGrid grid_to(double r_max, double dr) {
  return build_grid(r_max, static_cast<int>(std::ceil((r_max - 1.0) / dr)) + 1);
}

RadialField unit_bump(const RadialGrid& g, double lo = 1.0, double hi = 2.0) {
  return normalize_combined(make_bump(g, lo, hi, 2.0));
}

}  // namespace

TEST_CASE("semilinear_evolve: zero amplitude completes and stays zero") {
  const RadialGrid g = grid_to(10.0, 0.05);
  SemilinearConfig cfg;
  cfg.p = 2.0;
  cfg.epsilon = 0.0;
  const SemilinearRun run = semilinear_evolve(unit_bump(g), 5.0, cfg);
  CHECK(run.status == RunStatus::Completed);
  for (const FunctionalSample& s : run.series) CHECK(s.sup == 0.0);
}

TEST_CASE("critical-exponent bumps blow up sooner as the amplitude grows") {
  const RadialGrid g = grid_to(60.0, 0.05);
  const RadialField data = unit_bump(g);
  double prev = std::numeric_limits<double>::infinity();
  for (double eps : {60.0, 100.0, 200.0}) {
    SemilinearConfig cfg;
    cfg.p = 2.0;
    cfg.epsilon = eps;
    const SemilinearRun run = semilinear_evolve(data, 50.0, cfg);
    REQUIRE(run.status == RunStatus::BlewUp);
    CHECK(run.t_end > 0.0);
    CHECK(run.t_end < prev);
    prev = run.t_end;
  }
}

TEST_CASE("supercritical small data completes with decaying gradient") {
  const RadialGrid g = grid_to(60.0, 0.05);
  SemilinearConfig cfg;
  cfg.p = 3.0;
  cfg.epsilon = 0.1;
  const SemilinearRun run = semilinear_evolve(unit_bump(g), 50.0, cfg);
  REQUIRE(run.status == RunStatus::Completed);
  const FunctionalSample& early = run.series[run.series.size() / 4];
  const FunctionalSample& late = run.series.back();
  CHECK(late.grad_l2 < early.grad_l2);
  // X_t is non-decreasing along the run.
  double prev = 0.0;
  for (const FunctionalSample& s : run.series) {
    CHECK(s.xt >= prev);
    prev = s.xt;
  }
}

TEST_CASE("nonnegative data keeps the semilinear flow essentially nonnegative") {
  const RadialGrid g = grid_to(30.0, 0.02);
  SemilinearConfig cfg;
  cfg.p = 2.0;
  cfg.epsilon = 0.5;
  cfg.state_times = {2.0, 6.0, 12.0};
  const SemilinearRun run = semilinear_evolve(unit_bump(g), 12.0, cfg);
  REQUIRE(run.status == RunStatus::Completed);
  double lo = 0.0, hi = 0.0;
  for (const RadialField& u : run.states) {
    for (double v : u.values) {
      lo = std::min(lo, v);
      hi = std::max(hi, std::abs(v));
    }
  }
  CHECK(lo >= -1e-6 * hi);
}

TEST_CASE("confirm_blowup: linear flow never declares, blow-up is dt-stable") {
  const RadialGrid g = grid_to(40.0, 0.05);
  const RadialField data = unit_bump(g);

  SemilinearConfig lin;
  lin.p = 2.0;
  lin.epsilon = 60.0;
  lin.source_enabled = false;
  const BlowupDecision quiet = confirm_blowup(data, 30.0, lin);
  CHECK_FALSE(quiet.blew_up);

  SemilinearConfig hot = lin;
  hot.source_enabled = true;
  const BlowupDecision loud = confirm_blowup(data, 30.0, hot);
  REQUIRE(loud.blew_up);
  CHECK(loud.stable);
  CHECK(loud.t_cross > 0.0);
}

TEST_CASE("blow-up shows up in the sup norm and the X functional together") {
  const RadialGrid g = grid_to(60.0, 0.05);
  SemilinearConfig cfg;
  cfg.p = 2.0;
  cfg.epsilon = 60.0;
  cfg.output_samples = 2000;
  const SemilinearRun run = semilinear_evolve(unit_bump(g), 50.0, cfg);
  REQUIRE(run.status == RunStatus::BlewUp);
  double sup_ref = 0.0, xt_ref = 0.0;
  for (const FunctionalSample& s : run.series) {
    if (s.t >= 0.1) {
      sup_ref = s.sup;
      xt_ref = s.xt;
      break;
    }
  }
  REQUIRE(sup_ref > 0.0);
  const FunctionalSample& last = run.series.back();
  CHECK(last.sup >= 1e3 * sup_ref);
  CHECK(last.xt >= 1e3 * xt_ref);
}

TEST_CASE("lifespan_estimate: amplitude monotonicity and the Q functional") {
  LifespanConfig cfg;
  cfg.dr = 0.05;
  cfg.horizon = 500.0;
  cfg.max_refines = 2;
  const LifespanRecord big = lifespan_estimate(1.5, 3.0, cfg);
  const LifespanRecord small = lifespan_estimate(1.5, 1.0, cfg);
  REQUIRE_FALSE(big.completed_horizon);
  REQUIRE_FALSE(small.completed_horizon);
  CHECK(big.converged);
  CHECK(small.T_measured > big.T_measured);
  CHECK(big.Q_value ==
        doctest::Approx(std::pow(3.0, 0.5) * decay_weight_integral(big.T_measured, 1.5))
            .epsilon(1e-9));
  CHECK_THROWS_AS(lifespan_estimate(0.9, 0.5, cfg), std::invalid_argument);
}

TEST_CASE("duhamel reconstruction: exact for the linear flow, second order with source") {
  SUBCASE("linear flow reproduces itself at rounding level") {
    const RadialGrid g = grid_to(12.0, 0.05);
    SemilinearConfig cfg;
    cfg.p = 2.0;
    cfg.epsilon = 0.3;
    cfg.source_enabled = false;
    cfg.record_source = true;
    cfg.state_times = {2.0, 4.0};
    const SemilinearRun run = semilinear_evolve(unit_bump(g), 4.0, cfg);
    const DuhamelReport rep = duhamel_consistency_check(run, unit_bump(g));
    CHECK(rep.max_rel_deviation <= 1e-12);
  }

  SUBCASE("with the source on, the deviation shrinks at second order") {
    std::vector<double> hs, devs;
    for (int level = 0; level < 3; ++level) {
      const double dr = 0.08 / (1 << level);
      const RadialGrid g = grid_to(12.0, dr);
      SemilinearConfig cfg;
      cfg.p = 2.0;
      cfg.epsilon = 0.4;
      cfg.record_source = true;
      cfg.state_times = {4.0};
      const SemilinearRun run = semilinear_evolve(unit_bump(g), 4.0, cfg);
      REQUIRE(run.status == RunStatus::Completed);
      const DuhamelReport rep = duhamel_consistency_check(run, unit_bump(g));
      hs.push_back(dr);
      devs.push_back(rep.max_rel_deviation);
    }
    CHECK(oracle::convergence_slope(hs, devs) >= 1.7);
  }

  SUBCASE("deviation grows with the amplitude") {
    const RadialGrid g = grid_to(12.0, 0.05);
    double prev = 0.0;
    for (double eps : {0.2, 0.4, 0.8}) {
      SemilinearConfig cfg;
      cfg.p = 2.0;
      cfg.epsilon = eps;
      cfg.record_source = true;
      cfg.state_times = {4.0};
      const SemilinearRun run = semilinear_evolve(unit_bump(g), 4.0, cfg);
      const DuhamelReport rep = duhamel_consistency_check(run, unit_bump(g));
      CHECK(rep.max_rel_deviation > prev);
      prev = rep.max_rel_deviation;
    }
  }
}

TEST_CASE("semilinear flow dominates the linear flow early for nonnegative data") {
  const RadialGrid g = grid_to(12.0, 0.02);
  const RadialField data = unit_bump(g);
  const double eps = 0.5;
  SemilinearConfig cfg;
  cfg.p = 2.0;
  cfg.epsilon = eps;
  cfg.state_times = {1.0, 2.0};
  const SemilinearRun run = semilinear_evolve(data, 2.0, cfg);

  WaveConfig wc;
  const WaveTrajectory lin = linear_evolve(data, 2.0, wc, {1.0, 2.0});
  for (std::size_t k = 0; k < run.states.size(); ++k) {
    const double semi = lp_norm(run.states[k], 2.0, Measure::Lebesgue);
    double lin_norm = 0.0;
    for (const WaveSample& s : lin.samples) {
      if (std::abs(s.t - run.state_times[k]) <= run.dt) {
        lin_norm = eps * lp_norm(s.u, 2.0, Measure::Lebesgue);
      }
    }
    CHECK(semi >= lin_norm * (1.0 - 0.05));
  }
}

TEST_CASE("heat comparison lifespan: double-exponential growth pattern at p = 2") {
  HeatConfig hc;
  const double horizon = 5000.0;
  const double r_max = heat_domain_radius(2.0, horizon, hc);
  const RadialGrid g = build_grid(r_max, static_cast<int>((r_max - 1.0) / 0.1) + 1);
  const RadialField f = unit_bump(g);

  // Geometric amplitude steps: the comparison lifespan expands faster than
  // any power, so the successive ratios themselves must grow.
  std::vector<double> horizons;
  for (double eps : {40.0, 28.0, 20.0, 18.0}) {
    const HeatComparisonResult res = heat_comparison_lifespan(f, eps, 2.0, horizon, hc);
    REQUIRE_FALSE(res.hit_horizon);
    horizons.push_back(res.T);
  }
  CHECK(horizons[1] > horizons[0]);
  CHECK(horizons[2] > horizons[1]);
  CHECK(horizons[3] > horizons[2]);
  CHECK(horizons[2] / horizons[1] > horizons[1] / horizons[0]);
  // Consistency with the logarithmic sup-norm decay: eps * loglog(T) settles.
  const double q1 = 20.0 * std::log1p(std::log1p(horizons[2]));
  const double q2 = 18.0 * std::log1p(std::log1p(horizons[3]));
  CHECK(std::abs(q2 - q1) / q2 < 0.12);

  const HeatComparisonResult global = heat_comparison_lifespan(f, 0.2, 3.0, 1e4, hc);
  CHECK(global.hit_horizon);

  const HeatComparisonResult quick = heat_comparison_lifespan(f, 300.0, 2.0, 1e4, hc);
  const HeatComparisonResult quicker = heat_comparison_lifespan(f, 600.0, 2.0, 1e4, hc);
  CHECK(quick.T > 0.0);
  CHECK(quicker.T < quick.T);
}

TEST_CASE("global decay report guards its preconditions") {
  const RadialGrid g = grid_to(20.0, 0.05);
  SemilinearConfig cfg;
  cfg.p = 3.0;
  cfg.epsilon = 0.1;
  const SemilinearRun run = semilinear_evolve(unit_bump(g), 15.0, cfg);
  REQUIRE(run.status == RunStatus::Completed);
  const GlobalDecayReport rep = global_decay_report(run, 5.0);
  CHECK_FALSE(rep.times.empty());
  for (double m : rep.mass) CHECK(std::isfinite(m));

  SemilinearConfig sub = cfg;
  sub.p = 1.5;
  const SemilinearRun subrun = semilinear_evolve(unit_bump(g), 5.0, sub);
  CHECK_THROWS_AS(global_decay_report(subrun), std::invalid_argument);

  SemilinearConfig zero = cfg;
  zero.epsilon = 0.0;
  const SemilinearRun zrun = semilinear_evolve(unit_bump(g), 15.0, zero);
  const GlobalDecayReport zrep = global_decay_report(zrun, 5.0);
  for (double v : zrep.grad_ratio) CHECK(v == 0.0);
  for (double v : zrep.mass) CHECK(v == 0.0);
  for (double v : zrep.energy_ratio) CHECK(v == 0.0);
}
