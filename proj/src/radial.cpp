#include "dwlab/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace dwlab {

RadialGrid build_grid(double r_max, int n) {
  if (!(r_max > 1.0)) {
    throw std::invalid_argument("build_grid: r_max must exceed 1");
  }
  if (n < 3) {
    throw std::invalid_argument("build_grid: need at least 3 nodes");
  }
  RadialGrid g;
  g.r_max = r_max;
  g.n = n;
  g.dr = (r_max - 1.0) / static_cast<double>(n - 1);
  return g;
}

RadialField::RadialField(const RadialGrid& g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
  if (static_cast<int>(values.size()) != g.n) {
    throw std::invalid_argument("RadialField: value count must match grid");
  }
}

double measure_density(Measure m, double r) {
  const double lebesgue = 2.0 * M_PI * r;
  return m == Measure::Lebesgue ? lebesgue : (1.0 + std::log(r)) * lebesgue;
}

namespace {

template <class NodeTerm>
double trapezoid(const RadialGrid& g, NodeTerm&& term) {
  double acc = 0.0;
  double prev = term(0);
  for (int i = 1; i < g.n; ++i) {
    const double cur = term(i);
    acc += 0.5 * g.dr * (prev + cur);
    prev = cur;
  }
  return acc;
}

}  // namespace

double integrate(const RadialField& f, Measure m) {
  const RadialGrid& g = f.grid;
  return trapezoid(g, [&](int i) { return f[i] * measure_density(m, g.radius(i)); });
}

double lp_norm(const RadialField& f, double p, Measure m) {
  if (std::isinf(p)) {
    double mx = 0.0;
    for (double v : f.values) mx = std::max(mx, std::abs(v));
    return mx;
  }
  if (!(p >= 1.0)) {
    throw std::invalid_argument("lp_norm: exponent must satisfy p >= 1");
  }
  const RadialGrid& g = f.grid;
  const double s = trapezoid(g, [&](int i) {
    return std::pow(std::abs(f[i]), p) * measure_density(m, g.radius(i));
  });
  return std::pow(s, 1.0 / p);
}

double l2_inner(const RadialField& f, const RadialField& g) {
  const RadialGrid& grid = f.grid;
  if (g.grid.n != grid.n || g.grid.r_max != grid.r_max) {
    throw std::invalid_argument("l2_inner: fields must share a grid");
  }
  return trapezoid(grid, [&](int i) {
    return f[i] * g[i] * measure_density(Measure::Lebesgue, grid.radius(i));
  });
}

double grad_norm_sq(const RadialField& f) {
  const RadialGrid& g = f.grid;
  const int n = g.n;
  const double inv2dr = 0.5 / g.dr;
  auto slope = [&](int i) {
    if (i == 0) return (f[1] - f[0]) / g.dr;
    if (i == n - 1) return (f[n - 1] - f[n - 2]) / g.dr;
    return (f[i + 1] - f[i - 1]) * inv2dr;
  };
  return trapezoid(g, [&](int i) {
    const double d = slope(i);
    return d * d * measure_density(Measure::Lebesgue, g.radius(i));
  });
}

double dirichlet_form(const RadialField& u, const RadialField& v) {
  const RadialGrid& g = u.grid;
  double acc = 0.0;
  for (int i = 0; i + 1 < g.n; ++i) {
    const double rm = g.radius(i) + 0.5 * g.dr;
    acc += 2.0 * M_PI * rm * (u[i + 1] - u[i]) * (v[i + 1] - v[i]) / g.dr;
  }
  return acc;
}

RadialField apply_laplacian(const RadialField& f) {
  const RadialGrid& g = f.grid;
  RadialField out(g);
  const double inv_dr2 = 1.0 / (g.dr * g.dr);
  const double inv_2dr = 0.5 / g.dr;
  for (int i = 1; i + 1 < g.n; ++i) {
    const double second = (f[i + 1] - 2.0 * f[i] + f[i - 1]) * inv_dr2;
    const double first = (f[i + 1] - f[i - 1]) * inv_2dr;
    out[i] = second + first / g.radius(i);
  }
  return out;
}

double decay_weight(double t) {
  if (t < 0.0) {
    throw std::invalid_argument("decay_weight: t must be nonnegative");
  }
  return 1.0 / ((1.0 + t) * (1.0 + std::log1p(t)));
}

namespace {

// Adaptive Simpson on [a, b] with absolute tolerance budget `tol`.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double integrate_adaptive(F&& f, double a, double b, double rel_tol) {
  if (b <= a) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tol = std::max(std::abs(whole) * rel_tol, 1e-300);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double decay_weight_integral(double t, double p) {
  if (t < 0.0) {
    throw std::invalid_argument("decay_weight_integral: t must be nonnegative");
  }
  if (!(p > 1.0)) {
    throw std::invalid_argument("decay_weight_integral: exponent must exceed 1");
  }
  if (t == 0.0) return 0.0;
  // y = log(1+s) turns the integrand into exp((2-p) y) * (1+y)^(1-p).
  const double y_end = std::log1p(t);
  auto integrand = [p](double y) {
    return std::exp((2.0 - p) * y) * std::pow(1.0 + y, 1.0 - p);
  };
  return integrate_adaptive(integrand, 0.0, y_end, 1e-12);
}

RadialField make_bump(const RadialGrid& g, double lo, double hi, double k) {
  RadialField f(g);
  for (int i = 0; i < g.n; ++i) {
    const double r = g.radius(i);
    const double w = (r - lo) * (hi - r);
    f[i] = w > 0.0 ? std::pow(w, k) : 0.0;
  }
  return f;
}

RadialField normalize_combined(const RadialField& f, double total) {
  const double size = lp_norm(f, 2.0, Measure::Lebesgue) + lp_norm(f, 1.0, Measure::LogWeighted);
  if (size <= 0.0) {
    throw std::invalid_argument("normalize_combined: zero field");
  }
  RadialField out = f;
  const double c = total / size;
  for (double& v : out.values) v *= c;
  return out;
}

double support_radius(const RadialField& f) {
  for (int i = f.grid.n - 1; i >= 0; --i) {
    if (f[i] != 0.0) return f.grid.radius(i);
  }
  return RadialGrid::r_min();
}

}  // namespace dwlab
