#pragma once

#include <cstddef>
#include <vector>

namespace dwlab {

/// Uniform radial mesh on [1, r_max].  The inner radius is always 1 (the
/// boundary of the excluded unit disk); node i sits at r_i = 1 + i*dr.
struct RadialGrid {
  double r_max = 2.0;
  int n = 3;
  double dr = 0.5;

  double radius(int i) const { return 1.0 + dr * static_cast<double>(i); }
  static constexpr double r_min() { return 1.0; }
};

/// Builds a uniform grid.  Rejects r_max <= 1 and n < 3.
RadialGrid build_grid(double r_max, int n);

/// Nodal samples of a radial function on a RadialGrid.
struct RadialField {
  RadialGrid grid;
  std::vector<double> values;

  RadialField() = default;
  explicit RadialField(const RadialGrid& g) : grid(g), values(g.n, 0.0) {}
  RadialField(const RadialGrid& g, std::vector<double> v);

  int size() const { return grid.n; }
  double& operator[](int i) { return values[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return values[static_cast<std::size_t>(i)]; }
};

/// Planar measures restricted to radial functions: Lebesgue has density
/// 2*pi*r, the log-weighted measure (1 + log r) * 2*pi*r.
enum class Measure { Lebesgue, LogWeighted };

double measure_density(Measure m, double r);

/// Trapezoidal quadrature of f against the measure density over [1, r_max].
double integrate(const RadialField& f, Measure m);

/// (integral |f|^p dm)^(1/p); p = infinity gives the nodal max of |f|.
/// Rejects p < 1.
double lp_norm(const RadialField& f, double p, Measure m);

/// L^2(2*pi*r dr) inner product of two fields on a common grid.
double l2_inner(const RadialField& f, const RadialField& g);

/// Squared L^2 norm of the radial gradient: quadrature of centered (interior)
/// and one-sided (boundary) difference quotients against 2*pi*r dr.
double grad_norm_sq(const RadialField& f);

/// Cell-based Dirichlet form a(u,v) = sum over cells of
/// 2*pi*r_{i+1/2} * (du/dr)(dv/dr) * dr.  This is the bilinear form whose
/// discrete integration by parts against apply_laplacian is exact, which the
/// evolution schemes use for energy bookkeeping.
double dirichlet_form(const RadialField& u, const RadialField& v);

/// Discrete radial Laplacian f'' + f'/r: centered 3-point stencil for f''
/// plus centered 2-point for f'/r at interior nodes; boundary nodes carry 0.
RadialField apply_laplacian(const RadialField& f);

/// The decay weight 1 / ((1+t)(1+log(1+t))) that governs every linear decay
/// rate on the two-dimensional exterior domain.  Rejects t < 0.
double decay_weight(double t);

/// integral_0^t decay_weight(s)^(p-1) ds, evaluated by adaptive quadrature
/// after the substitution y = log(1+s).  For p = 2 the exact value is
/// log(1 + log(1+t)).  Rejects p <= 1 or t < 0.
double decay_weight_integral(double t, double p);

/// [(r-lo)(hi-r)]_+^k sampled on the grid (zero outside [lo, hi]).
RadialField make_bump(const RadialGrid& g, double lo, double hi, double k);

/// Scales f so that ||f||_{L^2} + ||f||_{L^1_dmu} equals `total`.
/// Rejects the zero field.
RadialField normalize_combined(const RadialField& f, double total = 1.0);

/// Largest node radius with a nonzero value (r_min if f == 0).
double support_radius(const RadialField& f);

}  // namespace dwlab
