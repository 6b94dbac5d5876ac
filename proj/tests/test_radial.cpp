#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "dwlab/radial.hpp"
#include "oracle_helpers.hpp"

using namespace dwlab;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

RadialField constant_field(const RadialGrid& g, double c) {
  RadialField f(g);
  for (int i = 0; i < g.n; ++i) f[i] = c;
  return f;
}
}  // namespace

TEST_CASE("build_grid lays out uniform nodes from the obstacle boundary") {
  const RadialGrid g = build_grid(2.0, 3);
  CHECK(g.radius(0) == doctest::Approx(1.0));
  CHECK(g.radius(1) == doctest::Approx(1.5));
  CHECK(g.radius(2) == doctest::Approx(2.0));

  CHECK_THROWS_AS(build_grid(1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(0.5, 10), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(2.0, 2), std::invalid_argument);

  const RadialGrid fine = build_grid(101.0, 10001);
  CHECK(fine.dr == doctest::Approx(0.01).epsilon(1e-14));
}

TEST_CASE("integrate: annulus area and log-weighted antiderivative") {
  const RadialGrid g = build_grid(2.0, 2001);
  CHECK(integrate(constant_field(g, 1.0), Measure::Lebesgue) ==
        doctest::Approx(3.0 * M_PI).epsilon(1e-12));
  CHECK(integrate(constant_field(g, 0.0), Measure::LogWeighted) == 0.0);

  // integral of (1+log r) 2 pi r over [1, e]: antiderivative
  // r^2/2 (1+log r) - r^2/4 gives 2 pi (3 e^2/4 - 1/4).
  const double exact = 2.0 * M_PI * (0.75 * std::exp(2.0) - 0.25);
  std::vector<double> hs, errs;
  for (int n : {501, 1001, 2001}) {
    const RadialGrid ge = build_grid(std::exp(1.0), n);
    const double got = integrate(constant_field(ge, 1.0), Measure::LogWeighted);
    hs.push_back(ge.dr);
    errs.push_back(std::abs(got - exact));
  }
  CHECK(errs.back() < 1e-5);
  CHECK(oracle::convergence_slope(hs, errs) >= 1.9);
}

TEST_CASE("integrate converges at second order on piecewise-linear fields") {
  // Hat profile with a knot off the grid nodes; exact integral against
  // 2 pi r dr from the per-piece antiderivative of (a r + b) r.
  const double knot = 1.0 + std::sqrt(2.0) / 2.0;
  auto hat = [&](double r) {
    if (r <= 1.0 || r >= 3.0) return 0.0;
    return r < knot ? (r - 1.0) / (knot - 1.0) : (3.0 - r) / (3.0 - knot);
  };
  const double exact = oracle::radial_integral(hat, 1.0, 3.0, false);
  std::vector<double> hs, errs;
  for (int n : {201, 401, 801, 1601}) {
    const RadialGrid g = build_grid(3.0, n);
    RadialField f(g);
    for (int i = 0; i < g.n; ++i) f[i] = hat(g.radius(i));
    hs.push_back(g.dr);
    errs.push_back(std::abs(integrate(f, Measure::Lebesgue) - exact));
  }
  CHECK(oracle::convergence_slope(hs, errs) >= 1.9);
}

TEST_CASE("lp_norm: closed forms, oracle values, and the exponent guard") {
  const RadialGrid g = build_grid(2.0, 4001);
  CHECK(lp_norm(constant_field(g, 0.0), 1.0, Measure::Lebesgue) == 0.0);
  CHECK(lp_norm(constant_field(g, 0.0), kInf, Measure::LogWeighted) == 0.0);
  CHECK(lp_norm(constant_field(g, 1.0), 2.0, Measure::Lebesgue) ==
        doctest::Approx(std::sqrt(3.0 * M_PI)).epsilon(1e-12));

  const RadialGrid wide = build_grid(3.0, 8001);
  RadialField f(wide);
  for (int i = 0; i < wide.n; ++i) {
    const double r = wide.radius(i);
    f[i] = (r > 1.0 && r < 2.0) ? (r - 1.0) * (2.0 - r) : 0.0;
  }
  const double want = oracle::radial_integral(
      [](double r) { return (r > 1.0 && r < 2.0) ? (r - 1.0) * (2.0 - r) : 0.0; }, 1.0,
      2.0, true);
  CHECK(lp_norm(f, 1.0, Measure::LogWeighted) ==
        doctest::Approx(want).epsilon(1e-6));

  CHECK(lp_norm(f, kInf, Measure::Lebesgue) == doctest::Approx(0.25).epsilon(1e-6));
  CHECK_THROWS_AS(lp_norm(f, 0.5, Measure::Lebesgue), std::invalid_argument);
}

TEST_CASE("grad_norm_sq matches the closed form for a sine hump") {
  // f = sin(pi (r-1)) on [1,2]: integral pi^2 cos^2(pi(r-1)) 2 pi r dr = 3 pi^3 / 2.
  const double exact = 1.5 * M_PI * M_PI * M_PI;
  std::vector<double> hs, errs;
  for (int n : {401, 801, 1601}) {
    const RadialGrid g = build_grid(2.0, n);
    RadialField f(g);
    for (int i = 0; i < g.n; ++i) f[i] = std::sin(M_PI * (g.radius(i) - 1.0));
    f[0] = 0.0;
    f[g.n - 1] = 0.0;
    hs.push_back(g.dr);
    errs.push_back(std::abs(grad_norm_sq(f) - exact));
  }
  CHECK(errs.back() / exact < 1e-4);
  CHECK(oracle::convergence_slope(hs, errs) >= 1.9);

  const RadialGrid g = build_grid(2.0, 101);
  CHECK(grad_norm_sq(constant_field(g, 0.0)) == 0.0);
}

TEST_CASE("decay weight: values, monotonicity, guard") {
  CHECK(decay_weight(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(decay_weight(std::exp(1.0) - 1.0) ==
        doctest::Approx(1.0 / (2.0 * std::exp(1.0))).epsilon(1e-14));
  double prev = decay_weight(0.0);
  for (double t = 1e-3; t <= 1e6; t *= 3.0) {
    const double cur = decay_weight(t);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK_THROWS_AS(decay_weight(-1.0), std::invalid_argument);
}

TEST_CASE("decay weight integral: p = 2 closed form and p > 2 saturation") {
  CHECK(decay_weight_integral(0.0, 2.0) == 0.0);
  CHECK(decay_weight_integral(std::exp(1.0) - 1.0, 2.0) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-8));
  for (double t : {10.0, 1234.5, 1e6}) {
    CHECK(decay_weight_integral(t, 2.0) ==
          doctest::Approx(std::log1p(std::log1p(t))).epsilon(1e-8));
  }
  const double late = decay_weight_integral(1e8, 3.0);
  const double mid = decay_weight_integral(1e6, 3.0);
  CHECK(std::abs(late - mid) / late < 0.01);
  CHECK_THROWS_AS(decay_weight_integral(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(decay_weight_integral(-1.0, 2.0), std::invalid_argument);
}

TEST_CASE("apply_laplacian: harmonic log profile, quadratic, boundary zeros") {
  const RadialGrid g = build_grid(3.0, 801);
  RadialField zero(g);
  const RadialField lz = apply_laplacian(zero);
  for (int i = 0; i < g.n; ++i) CHECK(lz[i] == 0.0);

  RadialField logf(g), quad(g), weight(g);
  for (int i = 0; i < g.n; ++i) {
    const double r = g.radius(i);
    logf[i] = std::log(r);
    quad[i] = r * r;
    weight[i] = 1.0 + std::log(r);
  }
  const RadialField llog = apply_laplacian(logf);
  const RadialField lquad = apply_laplacian(quad);
  const RadialField lweight = apply_laplacian(weight);
  double worst_log = 0.0, worst_weight = 0.0;
  for (int i = 1; i + 1 < g.n; ++i) {
    worst_log = std::max(worst_log, std::abs(llog[i]));
    worst_weight = std::max(worst_weight, std::abs(lweight[i]));
    CHECK(lquad[i] == doctest::Approx(4.0).epsilon(1e-9));
  }
  CHECK(worst_log <= 2.0 * g.dr * g.dr);
  CHECK(worst_weight <= 2.0 * g.dr * g.dr);
  CHECK(llog[0] == 0.0);
  CHECK(llog[g.n - 1] == 0.0);
}

TEST_CASE("norm monotonicity and Cauchy-Schwarz hold on random fields") {
  const RadialGrid g = build_grid(20.0, 2001);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    RadialField f(g);
    for (int i = 1; i + 1 < g.n; ++i) f[i] = uni(rng);
    for (Measure m : {Measure::Lebesgue, Measure::LogWeighted}) {
      for (double p : {1.0, 2.0, 3.0}) {
        CHECK(lp_norm(f, p, Measure::Lebesgue) <=
              lp_norm(f, p, Measure::LogWeighted) * (1.0 + 1e-12));
      }
      RadialField ind(g);
      for (int i = 0; i < g.n; ++i) ind[i] = f[i] != 0.0 ? 1.0 : 0.0;
      CHECK(lp_norm(f, 1.0, m) <=
            lp_norm(f, 2.0, m) * lp_norm(ind, 2.0, m) * (1.0 + 1e-9));
    }
  }
}
