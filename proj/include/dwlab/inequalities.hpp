#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dwlab/radial.hpp"

namespace dwlab {

/// [(1/4) integral f^2 / (r^2 (1+log r)^2) dx] / |grad f|_2^2.
/// The critical boundary Hardy quotient; at most 1 for admissible fields.
/// Rejects fields with vanishing gradient.
double hardy_ratio(const RadialField& f);

/// |f|_q / (|grad f|_2^{1-1/q} |f|_1^{1/q}), q > 1.  Rejects the zero field.
double gn_ratio(const RadialField& f, double q);

/// Log-weighted variant: |f|_{q,dmu} / (|grad f|_2^{1-1/q} |f|_{1,dmu}^{1/q}).
double log_gn_ratio(const RadialField& f, double q);

enum class InequalityKind { Hardy, GN, LogGN };

/// Test-function family for constant estimation: polynomial bumps with
/// varying center/width/power, boundary-window profiles near the Hardy
/// extremal direction, and dilations of a reference bump.
struct FamilySpec {
  std::vector<double> bump_centers{2.0, 4.0, 10.0};
  std::vector<double> bump_widths{0.5, 1.0, 2.0};
  std::vector<double> bump_powers{1.0, 2.0, 3.0};
  std::vector<double> hardy_windows{1.5, 2.5, 3.5};  // plateau end in s = 1 + log r
  std::vector<double> dilations{1.0, 2.0, 4.0, 8.0};
  int fuzz_count = 0;       // extra random piecewise-linear fields
  std::uint64_t seed = 1;
};

struct InequalityReport {
  std::string name;
  std::vector<double> ratios;
  double max_ratio = 0.0;
  double fitted_constant = 0.0;   // empirical supremum over the family
  double refinement_drift = 0.0;  // relative change of the constant after one refinement
  double grid_r_max = 0.0;
  int grid_n = 0;
};

/// Evaluates the requested quotient over the family on the given grid and
/// once more on a doubled grid to report the refinement drift.
/// Rejects an empty family.
InequalityReport constant_sweep(InequalityKind kind, const FamilySpec& family,
                                double q, const RadialGrid& grid);

/// Builds the family members on a concrete grid (used by the sweep and by
/// the acceptance checks directly).
std::vector<RadialField> family_fields(InequalityKind kind, const FamilySpec& family,
                                       const RadialGrid& grid);

/// Random piecewise-linear Dirichlet fields: a handful of uniformly placed
/// knots with values in [-1, 1], tied to zero at both ends.
std::vector<RadialField> random_dirichlet_fields(const RadialGrid& grid, int count,
                                                 std::uint64_t seed);

/// sqrt(1 + log r) shaped by a smooth window in s = 1 + log r: ramps up over
/// [1, plateau_lo], flat until plateau_hi, ramps down over one more unit.
/// The widening-plateau sequence drives the Hardy quotient upward.
RadialField hardy_near_extremal(const RadialGrid& grid, double plateau_lo,
                                double plateau_hi);

}  // namespace dwlab
