#pragma once

#include <vector>

namespace dwlab {

/// Closed-form solution of y'' + y' + lambda y = 0, y(0) = 0, y'(0) = 1,
/// branching on the discriminant 1 - 4 lambda.  Rejects lambda < 0.
double modal_solution(double lambda, double t);
double modal_solution_deriv(double lambda, double t);

struct ModalBounds {
  std::vector<double> lambdas;
  // Per mode, sup over the time grid of the two normalized gaps:
  //  (1)  sqrt(l) |y(t) - e^{-lt}| / (t^{-3/2} e^{-lt/2} + e^{-t/16} sqrt(l)/(sqrt(l)+1))
  //  (2)  |y'(t) + l e^{-lt}| / (t^{-2} (1 + e^{-t/4}))
  std::vector<double> c1_per_mode;
  std::vector<double> c2_per_mode;
  double c1_uniform = 0.0;  // max over modes
  double c2_uniform = 0.0;
};

/// Per-mode comparison of the damped flow against the pure decay flow, the
/// scalar content of the diffusion-phenomenon energy estimates.  Times must
/// be >= 1 (the estimates hold from t = 1 on).  Rejects negative modes.
ModalBounds modal_matsumura_verify(const std::vector<double>& lambdas,
                                   const std::vector<double>& times);

/// Convenience grids for the sweep.
std::vector<double> log_spaced(double lo, double hi, int count);

}  // namespace dwlab
