#pragma once

#include <optional>
#include <vector>

#include "olab/sampled.hpp"

namespace olab {

struct OperatorSpec {
  double alpha = 0.0;
  bool centered = true;
  int log_radii = 64;          // log-spaced radii in [h, R*]
  int lattice_radius_cells = 16;  // exact lattice distances below this many cells
  /// Overrides R*, the radius past which the ball average can only shrink.
  std::optional<double> max_radius;

  void validate(int n) const;
};

/// Radius set used for 2-D balls: the log-spaced radii up to the largest
/// R* over the grid, merged with the lattice distances below
/// lattice_radius_cells * h. Sorted, distinct.
std::vector<double> operator_radius_set(const SampledFunction& f, const OperatorSpec& spec);

/// R*(x): distance from x to the farthest corner of the support's bounding
/// box plus h (or spec.max_radius). Zero for the zero function.
double support_reach(const SampledFunction& f, const OperatorSpec& spec, const Point& x);

/// Fractional maximal function |B|^{alpha/n - 1} * integral over B, with |B|
/// the lattice measure. Centered balls sit on the evaluation point;
/// uncentered balls range over lattice centers and contain the point.
/// In 1-D every lattice radius is used, so both sups are exact over balls
/// centered on the lattice.
SampledFunction maximal(const SampledFunction& f, const OperatorSpec& spec);

/// The same supremum at an arbitrary point.
double maximal_at(const SampledFunction& f, const OperatorSpec& spec, const Point& x);

/// Riesz potential by direct summation with h^n |x - y|^{alpha - n}
/// weights. The self cell uses the exact cell integral in 1-D,
/// 2 (h/2)^alpha / alpha, and in 2-D the integral over the disk of equal
/// area (radius h / sqrt(pi)), 2 pi rho^alpha / alpha.
SampledFunction riesz_potential(const SampledFunction& f, double alpha);

/// I_alpha f(x) at an arbitrary point. Cells whose closure contains x are
/// integrated exactly; the rest use the midpoint rule.
double riesz_at(const SampledFunction& f, double alpha, const Point& x);

/// Serial brute-force versions, kept as test oracles for the fast paths.
namespace reference {
SampledFunction maximal(const SampledFunction& f, const OperatorSpec& spec);
SampledFunction riesz_potential(const SampledFunction& f, double alpha);
}  // namespace reference

namespace detail {
/// Half-width (in cells) of row offset dj inside the lattice disk whose
/// squared radius in cell units is t, or -1 when the row misses it.
long disk_half_width(double t, long dj);
/// Weight of the cell containing the evaluation point in the Riesz sum.
double riesz_self_weight(int dim, double h, double alpha);
}  // namespace detail

}  // namespace olab
