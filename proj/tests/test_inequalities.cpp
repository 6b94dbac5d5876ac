#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "dwlab/inequalities.hpp"
#include "dwlab/radial.hpp"
#include "oracle_helpers.hpp"

using namespace dwlab;

namespace {

// Continuum quotients computed by adaptive quadrature on the analytic
// profile, fully independent of the grid path.
double oracle_gn_ratio(const std::function<double(double)>& f,
                       const std::function<double(double)>& fprime, double lo, double hi,
                       double q, bool log_weighted) {
  const double lq = std::pow(
      oracle::radial_integral([&](double r) { return std::pow(std::abs(f(r)), q); }, lo,
                              hi, log_weighted),
      1.0 / q);
  const double l1 = oracle::radial_integral([&](double r) { return std::abs(f(r)); }, lo,
                                            hi, log_weighted);
  const double grad = std::sqrt(oracle::radial_integral(
      [&](double r) { return fprime(r) * fprime(r); }, lo, hi, false));
  return lq / (std::pow(grad, 1.0 - 1.0 / q) * std::pow(l1, 1.0 / q));
}

RadialField sampled(const RadialGrid& g, const std::function<double(double)>& f) {
  RadialField out(g);
  for (int i = 0; i < g.n; ++i) out[i] = f(g.radius(i));
  out[0] = 0.0;
  out[g.n - 1] = 0.0;
  return out;
}

}  // namespace

TEST_CASE("hardy quotient: fuzzed fields stay below 1, far-out bumps far below") {
  const RadialGrid g = build_grid(40.0, 6000);
  for (const RadialField& f : random_dirichlet_fields(g, 100, 123)) {
    CHECK(hardy_ratio(f) <= 1.001);
  }

  const RadialGrid gfar = build_grid(250.0, 25000);
  const RadialField far = make_bump(gfar, 100.0, 200.0, 2.0);
  const double got = hardy_ratio(far);
  // Continuum value of the same quotient by independent quadrature.
  auto prof = [](double r) { return (r > 100.0 && r < 200.0) ? (r - 100.0) * (200.0 - r) : 0.0; };
  auto dprof = [](double r) { return (r > 100.0 && r < 200.0) ? 300.0 - 2.0 * r : 0.0; };
  const double lhs = 0.25 * oracle::radial_integral(
                                [&](double r) {
                                  const double H = 1.0 + std::log(r);
                                  return prof(r) * prof(r) / (r * r * H * H);
                                },
                                100.0, 200.0, false);
  const double rhs =
      oracle::radial_integral([&](double r) { return dprof(r) * dprof(r); }, 100.0,
                              200.0, false);
  CHECK(got == doctest::Approx(lhs / rhs).epsilon(1e-3));
  CHECK(got < 0.05);

  RadialField zero(g);
  CHECK_THROWS_AS(hardy_ratio(zero), std::invalid_argument);
}

TEST_CASE("hardy quotient climbs along the widening boundary-window family") {
  double prev = 0.0;
  for (double hi : {2.0, 3.0, 4.0, 5.0}) {
    // Each window needs log-depth 2*hi: grid out to r = e^{2 hi - 1}.
    const double r_max = std::exp(2.0 * hi - 1.0);
    const int n = std::min(800000, static_cast<int>((r_max - 1.0) / 0.01) + 1);
    const RadialGrid g = build_grid(r_max, n);
    const RadialField f = hardy_near_extremal(g, 1.5, hi);
    const double ratio = hardy_ratio(f);
    CHECK(ratio <= 1.001);
    CHECK(ratio > prev);
    prev = ratio;
  }
  CHECK(prev > 0.05);
}

TEST_CASE("quotients are exactly amplitude invariant") {
  const RadialGrid g = build_grid(20.0, 4000);
  const RadialField f = make_bump(g, 2.0, 6.0, 2.0);
  RadialField scaled = f;
  for (double& v : scaled.values) v *= -137.25;
  CHECK(hardy_ratio(scaled) == doctest::Approx(hardy_ratio(f)).epsilon(1e-12));
  CHECK(gn_ratio(scaled, 2.0) == doctest::Approx(gn_ratio(f, 2.0)).epsilon(1e-12));
  CHECK(log_gn_ratio(scaled, 2.0) == doctest::Approx(log_gn_ratio(f, 2.0)).epsilon(1e-12));
}

TEST_CASE("interpolation quotient: dilation family against the continuum oracle") {
  const RadialGrid g = build_grid(40.0, 40000);
  double worst = 0.0;
  for (double lam : {1.0, 2.0, 4.0, 8.0}) {
    auto prof = [lam](double r) {
      const double s = 1.0 + (r - 1.0) / lam;
      return (s > 1.0 && s < 2.0) ? (s - 1.0) * (2.0 - s) : 0.0;
    };
    auto dprof = [lam](double r) {
      const double s = 1.0 + (r - 1.0) / lam;
      return (s > 1.0 && s < 2.0) ? (3.0 - 2.0 * s) / lam : 0.0;
    };
    const RadialField f = sampled(g, prof);
    const double got = gn_ratio(f, 2.0);
    const double want = oracle_gn_ratio(prof, dprof, 1.0, 1.0 + 2.0 * lam, 2.0, false);
    CHECK(got == doctest::Approx(want).epsilon(5e-3));
    worst = std::max(worst, got);
  }
  CHECK(worst < 2.0);

  const RadialField f = make_bump(g, 2.0, 4.0, 2.0);
  CHECK_THROWS_AS(gn_ratio(f, 1.0), std::invalid_argument);
  RadialField zero(g);
  CHECK_THROWS_AS(gn_ratio(zero, 2.0), std::invalid_argument);
}

TEST_CASE("log quotient stays bounded as bumps move far out") {
  const RadialGrid g = build_grid(1100.0, 220000);
  for (double c : {3.0, 10.0, 100.0, 1000.0}) {
    auto prof = [c](double r) {
      const double d = r - c;
      return std::abs(d) < 1.0 ? (1.0 - d) * (1.0 + d) : 0.0;
    };
    auto dprof = [c](double r) {
      const double d = r - c;
      return std::abs(d) < 1.0 ? -2.0 * d : 0.0;
    };
    const RadialField f = sampled(g, prof);
    const double got = log_gn_ratio(f, 2.0);
    const double want = oracle_gn_ratio(prof, dprof, c - 1.0, c + 1.0, 2.0, true);
    CHECK(got == doctest::Approx(want).epsilon(5e-3));
    // The log weight at the center grows sevenfold across the family, yet
    // the weighted quotient never exceeds the plain one by more than the
    // geometry allows: their ratio stays pinned near 1.
    const double plain = gn_ratio(f, 2.0);
    CHECK(got / plain > 0.75);
    CHECK(got / plain < 1.35);
  }
}

TEST_CASE("weighted norms dominate plain norms on compact support") {
  const RadialGrid g = build_grid(30.0, 8000);
  const RadialField f = make_bump(g, 3.0, 9.0, 2.0);
  for (double q : {1.5, 2.0, 3.0}) {
    const double plain = lp_norm(f, q, Measure::Lebesgue);
    const double weighted = lp_norm(f, q, Measure::LogWeighted);
    const double cap = std::pow(1.0 + std::log(support_radius(f)), 1.0 / q) * plain;
    CHECK(plain <= weighted * (1.0 + 1e-12));
    CHECK(weighted <= cap * (1.0 + 1e-12));
  }
}

TEST_CASE("constant_sweep: reports, drift, and the empty-family guard") {
  const RadialGrid g = build_grid(50.0, 5000);
  FamilySpec family;
  family.fuzz_count = 40;
  family.seed = 99;

  const InequalityReport hardy = constant_sweep(InequalityKind::Hardy, family, 2.0, g);
  CHECK(hardy.max_ratio <= 1.001);
  CHECK(hardy.fitted_constant == hardy.max_ratio);

  const InequalityReport lgn = constant_sweep(InequalityKind::LogGN, family, 2.0, g);
  CHECK(lgn.refinement_drift <= 0.10);
  CHECK(std::isfinite(lgn.fitted_constant));

  FamilySpec empty;
  empty.bump_centers.clear();
  empty.bump_widths.clear();
  empty.bump_powers.clear();
  empty.hardy_windows.clear();
  empty.dilations.clear();
  CHECK_THROWS_AS(constant_sweep(InequalityKind::GN, empty, 2.0, g),
                  std::invalid_argument);
}
