#include "dwlab/heat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dwlab {

double heat_domain_radius(double r_supp, double horizon, const HeatConfig& cfg) {
  const double spread = std::sqrt(std::max(4.0 * horizon * std::log(1.0 / cfg.tol_tail), 1.0));
  return r_supp + cfg.tail_margin * spread;
}

namespace {

// One theta-step of w' = Lap w with homogeneous Dirichlet ends, solved by the
// Thomas algorithm.  The elimination coefficients depend only on (dt, theta),
// so they are factored once and reused across steps.
class ThetaStepper {
 public:
  ThetaStepper(const RadialGrid& g, double dt, double theta)
      : g_(g), dt_(dt), theta_(theta) {
    const int n = g.n;
    sub_.assign(n, 0.0);
    sup_.assign(n, 0.0);
    diag_.assign(n, 0.0);
    cfac_.assign(n, 0.0);
    rhs_.assign(n, 0.0);
    const double inv_dr2 = 1.0 / (g.dr * g.dr);
    const double inv_2dr = 0.5 / g.dr;
    for (int i = 1; i + 1 < n; ++i) {
      const double lo = inv_dr2 - inv_2dr / g.radius(i);
      const double hi = inv_dr2 + inv_2dr / g.radius(i);
      sub_[i] = -dt * theta * lo;
      sup_[i] = -dt * theta * hi;
      diag_[i] = 1.0 + 2.0 * dt * theta * inv_dr2;
    }
    // Forward-elimination factors.
    double d = diag_[1];
    if (d == 0.0) throw std::runtime_error("heat step: zero pivot");
    cfac_[1] = sup_[1] / d;
    piv_.assign(n, 0.0);
    piv_[1] = d;
    for (int i = 2; i + 1 < n; ++i) {
      d = diag_[i] - sub_[i] * cfac_[i - 1];
      if (d == 0.0) throw std::runtime_error("heat step: zero pivot");
      cfac_[i] = sup_[i] / d;
      piv_[i] = d;
    }
  }

  void step(std::vector<double>& w) {
    const int n = g_.n;
    const double inv_dr2 = 1.0 / (g_.dr * g_.dr);
    const double inv_2dr = 0.5 / g_.dr;
    const double expl = dt_ * (1.0 - theta_);
    for (int i = 1; i + 1 < n; ++i) {
      const double lap = (w[i + 1] - 2.0 * w[i] + w[i - 1]) * inv_dr2 +
                         (w[i + 1] - w[i - 1]) * inv_2dr / g_.radius(i);
      rhs_[i] = w[i] + expl * lap;
    }
    // Thomas solve with precomputed pivots.
    rhs_[1] /= piv_[1];
    for (int i = 2; i + 1 < n; ++i) {
      rhs_[i] = (rhs_[i] - sub_[i] * rhs_[i - 1]) / piv_[i];
    }
    w[0] = 0.0;
    w[n - 1] = 0.0;
    w[n - 2] = rhs_[n - 2];
    for (int i = n - 3; i >= 1; --i) {
      w[i] = rhs_[i] - cfac_[i] * w[i + 1];
    }
  }

 private:
  RadialGrid g_;
  double dt_;
  double theta_;
  std::vector<double> sub_, sup_, diag_, cfac_, piv_, rhs_;
};

void evolve_segment(std::vector<double>& w, const RadialGrid& g, double span,
                    double dt_target, int implicit_steps) {
  if (span <= 0.0) return;
  const int steps = std::max(1, static_cast<int>(std::ceil(span / dt_target)));
  const double dt = span / steps;
  const int n_impl = std::min(implicit_steps, steps);
  if (n_impl > 0) {
    ThetaStepper backward(g, dt, 1.0);
    for (int k = 0; k < n_impl; ++k) backward.step(w);
  }
  if (steps > n_impl) {
    ThetaStepper cn(g, dt, 0.5);
    for (int k = n_impl; k < steps; ++k) cn.step(w);
  }
}

double effective_dt(const RadialGrid& g, const HeatConfig& cfg) {
  return cfg.dt > 0.0 ? cfg.dt : g.dr;
}

}  // namespace

RadialField heat_evolve(const RadialField& f, double t, const HeatConfig& cfg) {
  if (t < 0.0) throw std::invalid_argument("heat_evolve: t must be nonnegative");
  RadialField w = f;
  w[0] = 0.0;
  w[f.grid.n - 1] = 0.0;
  evolve_segment(w.values, f.grid, t, effective_dt(f.grid, cfg), cfg.rannacher_steps);
  return w;
}

void heat_scan(const RadialField& f, const std::vector<double>& times,
               const HeatConfig& cfg, int min_segment_steps,
               const std::function<void(double, const RadialField&)>& visit) {
  RadialField w = f;
  w[0] = 0.0;
  w[f.grid.n - 1] = 0.0;
  const double dt0 = effective_dt(f.grid, cfg);
  double t_prev = 0.0;
  int implicit_left = cfg.rannacher_steps;
  for (double t : times) {
    if (t < t_prev) {
      throw std::invalid_argument("heat_scan: times must be increasing");
    }
    const double span = t - t_prev;
    const double dt_seg = std::max(dt0, span / std::max(1, min_segment_steps));
    evolve_segment(w.values, f.grid, span, dt_seg, implicit_left);
    if (span > 0.0) implicit_left = 0;
    visit(t, w);
    t_prev = t;
  }
}

std::vector<RadialField> heat_evolve_times(const RadialField& f,
                                           const std::vector<double>& times,
                                           const HeatConfig& cfg,
                                           int min_segment_steps) {
  std::vector<RadialField> out;
  out.reserve(times.size());
  heat_scan(f, times, cfg, min_segment_steps,
            [&](double, const RadialField& w) { out.push_back(w); });
  return out;
}

HeatDecayReport heat_decay_report(const RadialField& f, double q,
                                  const std::vector<double>& times,
                                  const HeatConfig& cfg) {
  if (!(q >= 1.0 && q <= 2.0)) {
    throw std::invalid_argument("heat_decay_report: q must lie in [1, 2]");
  }
  HeatDecayReport rep;
  rep.q = q;
  rep.times = times;
  rep.grid = GridMeta{f.grid.r_max, f.grid.n, effective_dt(f.grid, cfg)};
  const double data_weighted = lp_norm(f, q, Measure::LogWeighted);
  const double data_plain = lp_norm(f, q, Measure::Lebesgue);
  if (data_weighted <= 0.0) {
    rep.ratios.assign(times.size(), 0.0);
    rep.pointwise_ratios.assign(times.size(), 0.0);
    return rep;
  }
  const std::vector<RadialField> states = heat_evolve_times(f, times, cfg);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double t = times[k];
    const double logf = 1.0 + std::log1p(t);
    const double rate = std::pow(t, 1.0 / q - 0.5) * std::pow(logf, 1.0 / q);
    const double l2 = lp_norm(states[k], 2.0, Measure::Lebesgue);
    rep.ratios.push_back(rate * l2 / data_weighted);
    double pw = 0.0;
    const RadialGrid& g = f.grid;
    for (int i = 0; i < g.n; ++i) {
      const double profile = 1.0 + std::log(g.radius(i));
      pw = std::max(pw, std::abs(states[k][i]) * std::pow(t, 1.0 / q) * logf /
                            (profile * data_plain));
    }
    rep.pointwise_ratios.push_back(pw);
  }
  rep.max_ratio = *std::max_element(rep.ratios.begin(), rep.ratios.end());
  rep.max_pointwise_ratio =
      *std::max_element(rep.pointwise_ratios.begin(), rep.pointwise_ratios.end());
  return rep;
}

double supersolution_value(double r, double t, double q) {
  if (!(t >= 4.0)) {
    throw std::invalid_argument("supersolution_value: t must be >= 4");
  }
  if (!(r >= 1.0 && r * r <= t * (1.0 + 1e-12))) {
    throw std::invalid_argument("supersolution_value: need 1 <= r <= sqrt(t)");
  }
  if (!(q >= 1.0)) {
    throw std::invalid_argument("supersolution_value: q must be >= 1");
  }
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  const double theta = 2.0 + std::log(t) + 2.0 * std::log(r);
  const double phi = (1.0 + 2.0 * std::log(r)) / theta;
  return phi * std::pow(t, -inv_q) * std::exp(-r * r / (4.0 * t));
}

double linfty_kernel_constant(double q) {
  if (!(q >= 1.0)) {
    throw std::invalid_argument("linfty_kernel_constant: q must be >= 1");
  }
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  const double a = 1.0 - inv_q;
  const double pow_a = a == 0.0 ? 1.0 : std::pow(a, a);
  return pow_a * std::pow(4.0 * M_PI, -inv_q);
}

namespace {

// Exact residual d_t U - Lap U of the comparison profile, obtained by
// differentiating Phi and the Gaussian factor in closed form.
double residual_value(double r, double t, double inv_q) {
  const double logr = std::log(r);
  const double logt = std::log(t);
  const double theta = 2.0 + logt + 2.0 * logr;
  const double phi = (1.0 + 2.0 * logr) / theta;
  const double gauss = std::pow(t, -inv_q) * std::exp(-r * r / (4.0 * t));
  const double bracket = (1.0 + 2.0 * (logt - logr)) / (theta * theta) +
                         (1.0 - inv_q) * phi +
                         8.0 * t * (1.0 + logt) / (theta * theta * theta * r * r);
  return gauss / t * bracket;
}

}  // namespace

SupersolutionScan supersolution_residual_scan(double q, std::size_t samples) {
  if (!(q >= 1.0)) {
    throw std::invalid_argument("supersolution_residual_scan: q must be >= 1");
  }
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  SupersolutionScan scan;
  scan.samples = samples;
  scan.min_residual = std::numeric_limits<double>::infinity();
  // Halton pairs in bases 2 and 3, mapped log-uniformly in t over [4, 1e6]
  // and uniformly in r over [1, sqrt(t)].
  auto halton = [](std::size_t index, unsigned base) {
    double f = 1.0, v = 0.0;
    for (std::size_t i = index + 1; i > 0; i /= base) {
      f /= base;
      v += f * static_cast<double>(i % base);
    }
    return v;
  };
  const double span = std::log(1e6 / 4.0);
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = 4.0 * std::exp(halton(k, 2) * span);
    const double r = 1.0 + halton(k, 3) * (std::sqrt(t) - 1.0);
    const double res = residual_value(r, t, inv_q);
    if (res < scan.min_residual) {
      scan.min_residual = res;
      scan.worst_r = r;
      scan.worst_t = t;
    }
  }
  // Along r = sqrt(t) the outer region starts; the profile comparison there
  // rests on 1 + log(1+t) <= 2 (1 + log r).
  double margin = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 400; ++k) {
    const double t = 4.0 * std::exp(span * k / 400.0);
    const double m = 2.0 * (1.0 + 0.5 * std::log(t)) - (1.0 + std::log1p(t));
    margin = std::min(margin, m);
  }
  scan.region2_min_margin = margin;
  return scan;
}

}  // namespace dwlab
