#include "dwlab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace dwlab {

double hardy_ratio(const RadialField& f) {
  const RadialGrid& g = f.grid;
  double lhs = 0.0;
  double prev = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double r = g.radius(i);
    const double H = 1.0 + std::log(r);
    const double term = 0.25 * f[i] * f[i] / (r * r * H * H) * (2.0 * M_PI * r);
    if (i > 0) lhs += 0.5 * g.dr * (prev + term);
    prev = term;
  }
  const double rhs = grad_norm_sq(f);
  if (rhs <= 0.0) {
    throw std::invalid_argument("hardy_ratio: field has vanishing gradient");
  }
  return lhs / rhs;
}

double gn_ratio(const RadialField& f, double q) {
  if (!(q > 1.0)) {
    throw std::invalid_argument("gn_ratio: exponent must exceed 1");
  }
  const double lq = lp_norm(f, q, Measure::Lebesgue);
  const double l1 = lp_norm(f, 1.0, Measure::Lebesgue);
  const double grad = std::sqrt(grad_norm_sq(f));
  if (lq <= 0.0 || l1 <= 0.0 || grad <= 0.0) {
    throw std::invalid_argument("gn_ratio: zero field");
  }
  return lq / (std::pow(grad, 1.0 - 1.0 / q) * std::pow(l1, 1.0 / q));
}

double log_gn_ratio(const RadialField& f, double q) {
  if (!(q > 1.0)) {
    throw std::invalid_argument("log_gn_ratio: exponent must exceed 1");
  }
  const double lq = lp_norm(f, q, Measure::LogWeighted);
  const double l1 = lp_norm(f, 1.0, Measure::LogWeighted);
  const double grad = std::sqrt(grad_norm_sq(f));
  if (lq <= 0.0 || l1 <= 0.0 || grad <= 0.0) {
    throw std::invalid_argument("log_gn_ratio: zero field");
  }
  return lq / (std::pow(grad, 1.0 - 1.0 / q) * std::pow(l1, 1.0 / q));
}

namespace {

bool essentially_zero(const RadialField& f) {
  for (double v : f.values) {
    if (v != 0.0) return false;
  }
  return true;
}

}  // namespace

RadialField hardy_near_extremal(const RadialGrid& grid, double plateau_lo,
                                double plateau_hi) {
  // Window in s = 1 + log r: ramp up over [1, lo], flat on [lo, hi], ramp
  // down over [hi, 2 hi].  The outer ramp scales with the window so its
  // gradient cost stays O(1) while the plateau term grows like log(hi/lo).
  RadialField f(grid);
  for (int i = 0; i < grid.n; ++i) {
    const double r = grid.radius(i);
    const double s = 1.0 + std::log(r);
    double window = 0.0;
    if (s < plateau_lo) {
      const double v = (s - 1.0) / (plateau_lo - 1.0);
      window = v <= 0.0 ? 0.0 : std::pow(std::sin(0.5 * M_PI * v), 2);
    } else if (s <= plateau_hi) {
      window = 1.0;
    } else if (s < 2.0 * plateau_hi) {
      const double v = (s - plateau_hi) / plateau_hi;
      window = std::pow(std::cos(0.5 * M_PI * v), 2);
    }
    f[i] = std::sqrt(s) * window;
  }
  f[0] = 0.0;
  f[grid.n - 1] = 0.0;
  return f;
}

std::vector<RadialField> random_dirichlet_fields(const RadialGrid& grid, int count,
                                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> knot_count(4, 12);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::vector<RadialField> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const int knots = knot_count(rng);
    std::vector<double> ks(static_cast<std::size_t>(knots) + 2);
    std::vector<double> vs(ks.size());
    ks.front() = grid.r_min();
    ks.back() = grid.r_max;
    vs.front() = 0.0;
    vs.back() = 0.0;
    const double span = (grid.r_max - grid.r_min()) / (knots + 1);
    for (int j = 1; j <= knots; ++j) {
      ks[static_cast<std::size_t>(j)] = grid.r_min() + span * j;
      vs[static_cast<std::size_t>(j)] = value(rng);
    }
    RadialField f(grid);
    std::size_t seg = 0;
    for (int i = 0; i < grid.n; ++i) {
      const double r = grid.radius(i);
      while (seg + 2 < ks.size() && r > ks[seg + 1]) ++seg;
      const double w = (r - ks[seg]) / (ks[seg + 1] - ks[seg]);
      f[i] = vs[seg] * (1.0 - w) + vs[seg + 1] * w;
    }
    f[0] = 0.0;
    f[grid.n - 1] = 0.0;
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<RadialField> family_fields(InequalityKind kind, const FamilySpec& family,
                                       const RadialGrid& grid) {
  std::vector<RadialField> fields;
  for (double c : family.bump_centers) {
    for (double w : family.bump_widths) {
      for (double k : family.bump_powers) {
        const double lo = std::max(grid.r_min(), c - w);
        const double hi = std::min(grid.r_max, c + w);
        if (hi - lo < 4.0 * grid.dr) continue;
        RadialField f = make_bump(grid, lo, hi, k);
        if (!essentially_zero(f)) fields.push_back(std::move(f));
      }
    }
  }
  if (kind == InequalityKind::Hardy) {
    const double s_max = 1.0 + std::log(grid.r_max);
    for (double hi : family.hardy_windows) {
      if (2.0 * hi > s_max) continue;  // window must fit inside the grid
      RadialField f = hardy_near_extremal(grid, 1.5, hi);
      if (!essentially_zero(f)) fields.push_back(std::move(f));
    }
  }
  // Dilations of the reference bump, stretched away from the boundary.
  for (double lam : family.dilations) {
    if (lam == 1.0) continue;
    const double hi = std::min(grid.r_max, 1.0 + 2.0 * lam);
    RadialField f = make_bump(grid, 1.0, hi, 2.0);
    if (!essentially_zero(f)) fields.push_back(std::move(f));
  }
  if (family.fuzz_count > 0) {
    for (RadialField& f : random_dirichlet_fields(grid, family.fuzz_count, family.seed)) {
      if (!essentially_zero(f)) fields.push_back(std::move(f));
    }
  }
  return fields;
}

namespace {

double family_max_ratio(InequalityKind kind, const FamilySpec& family, double q,
                        const RadialGrid& grid, std::vector<double>* ratios) {
  const std::vector<RadialField> fields = family_fields(kind, family, grid);
  if (fields.empty()) {
    throw std::invalid_argument("constant_sweep: empty test-function family");
  }
  double mx = 0.0;
  for (const RadialField& f : fields) {
    double ratio = 0.0;
    switch (kind) {
      case InequalityKind::Hardy:
        ratio = hardy_ratio(f);
        break;
      case InequalityKind::GN:
        ratio = gn_ratio(f, q);
        break;
      case InequalityKind::LogGN:
        ratio = log_gn_ratio(f, q);
        break;
    }
    if (ratios != nullptr) ratios->push_back(ratio);
    mx = std::max(mx, ratio);
  }
  return mx;
}

}  // namespace

InequalityReport constant_sweep(InequalityKind kind, const FamilySpec& family,
                                double q, const RadialGrid& grid) {
  InequalityReport rep;
  switch (kind) {
    case InequalityKind::Hardy:
      rep.name = "critical_hardy";
      break;
    case InequalityKind::GN:
      rep.name = "gagliardo_nirenberg";
      break;
    case InequalityKind::LogGN:
      rep.name = "log_gagliardo_nirenberg";
      break;
  }
  rep.grid_r_max = grid.r_max;
  rep.grid_n = grid.n;
  rep.max_ratio = family_max_ratio(kind, family, q, grid, &rep.ratios);
  rep.fitted_constant = rep.max_ratio;
  const RadialGrid fine = build_grid(grid.r_max, 2 * (grid.n - 1) + 1);
  const double fine_max = family_max_ratio(kind, family, q, fine, nullptr);
  rep.refinement_drift = std::abs(fine_max - rep.fitted_constant) /
                         std::max(rep.fitted_constant, 1e-300);
  return rep;
}

}  // namespace dwlab
