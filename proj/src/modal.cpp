#include "dwlab/modal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dwlab {

namespace {

void check_mode(double lambda) {
  if (lambda < 0.0) {
    throw std::invalid_argument("modal_solution: mode must be nonnegative");
  }
}

}  // namespace

double modal_solution(double lambda, double t) {
  check_mode(lambda);
  const double disc = 1.0 - 4.0 * lambda;
  if (disc > 0.0) {
    const double omega = 0.5 * std::sqrt(disc);
    const double sp = -0.5 + omega;
    const double sm = -0.5 - omega;
    return (std::exp(sp * t) - std::exp(sm * t)) / (2.0 * omega);
  }
  if (disc == 0.0) {
    return t * std::exp(-0.5 * t);
  }
  const double omega = 0.5 * std::sqrt(-disc);
  return std::exp(-0.5 * t) * std::sin(omega * t) / omega;
}

double modal_solution_deriv(double lambda, double t) {
  check_mode(lambda);
  const double disc = 1.0 - 4.0 * lambda;
  if (disc > 0.0) {
    const double omega = 0.5 * std::sqrt(disc);
    const double sp = -0.5 + omega;
    const double sm = -0.5 - omega;
    return (sp * std::exp(sp * t) - sm * std::exp(sm * t)) / (2.0 * omega);
  }
  if (disc == 0.0) {
    return (1.0 - 0.5 * t) * std::exp(-0.5 * t);
  }
  const double omega = 0.5 * std::sqrt(-disc);
  return std::exp(-0.5 * t) * (std::cos(omega * t) - 0.5 * std::sin(omega * t) / omega);
}

ModalBounds modal_matsumura_verify(const std::vector<double>& lambdas,
                                   const std::vector<double>& times) {
  for (double t : times) {
    if (t < 1.0) {
      throw std::invalid_argument("modal_matsumura_verify: times must be >= 1");
    }
  }
  ModalBounds out;
  out.lambdas = lambdas;
  for (double l : lambdas) {
    check_mode(l);
    const double sq = std::sqrt(l);
    double c1 = 0.0, c2 = 0.0;
    for (double t : times) {
      const double heat = std::exp(-l * t);
      const double gap1 = sq * std::abs(modal_solution(l, t) - heat);
      const double rhs1 = std::pow(t, -1.5) * std::exp(-0.5 * l * t) +
                          std::exp(-t / 16.0) * sq / (sq + 1.0);
      c1 = std::max(c1, gap1 / rhs1);
      const double gap2 = std::abs(modal_solution_deriv(l, t) + l * heat);
      const double rhs2 = (1.0 + std::exp(-0.25 * t)) / (t * t);
      c2 = std::max(c2, gap2 / rhs2);
    }
    out.c1_per_mode.push_back(c1);
    out.c2_per_mode.push_back(c2);
  }
  out.c1_uniform = *std::max_element(out.c1_per_mode.begin(), out.c1_per_mode.end());
  out.c2_uniform = *std::max_element(out.c2_per_mode.begin(), out.c2_per_mode.end());
  return out;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    out.push_back(lo);
    return out;
  }
  const double step = std::log(hi / lo) / (count - 1);
  for (int k = 0; k < count; ++k) out.push_back(lo * std::exp(step * k));
  return out;
}

}  // namespace dwlab
