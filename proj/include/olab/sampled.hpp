#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "json.hpp"

namespace olab {

using Point = std::array<double, 2>;  // second coordinate unused in 1-D

/// Regular grid of cells over [-L, L]^n. Cell i along an axis has center
/// -L + (i + 1/2) h, so there are 2L/h cells per axis and no center sits
/// on the origin-aligned cell boundaries.
struct GridSpec {
  int dim = 1;
  double h = 1.0 / 64;
  double extent = 16.0;

  void validate() const;
  long cells_per_axis() const;
  std::size_t size() const;
  double cell_volume() const;
  double coord(long i) const { return -extent + (static_cast<double>(i) + 0.5) * h; }
  /// Index of the cell center nearest to x along one axis (not clipped).
  long nearest_index(double x) const;
  Point point(std::size_t flat) const;

  bool operator==(const GridSpec&) const = default;
};

/// Default grids: 1-D h = 1/64, L = 16; 2-D h = 1/16, L = 8.
GridSpec default_grid(int dim);

struct Ball {
  Point center{0.0, 0.0};
  double radius = 1.0;
};

/// v_n r^n; throws DomainError unless r > 0 and n is 1 or 2.
double ball_measure(int n, double r);

/// h^n times the number of lattice points (cell centers of the grid's
/// infinite extension) inside the closed ball. This is the digitized
/// measure consistent with the quadrature, independent of the domain edge.
double lattice_ball_measure(const GridSpec& grid, const Ball& ball);

/// Nonnegative values at cell centers, row-major in 2-D (index j * N + i
/// with i along x).
class SampledFunction {
 public:
  SampledFunction() = default;
  SampledFunction(GridSpec grid, std::vector<double> values);
  static SampledFunction zeros(const GridSpec& grid);

  const GridSpec& grid() const noexcept { return grid_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t k) const { return values_[k]; }
  double max_value() const;
  bool is_zero() const;

  SampledFunction scaled(double c) const;

 private:
  GridSpec grid_;
  std::vector<double> values_;
};

/// Evaluates a closed-form descriptor at the cell centers. Supported types:
/// ball_indicator, power_decay, gaussian and sum. Throws ConfigError for
/// anything else or for parameters that would produce negative values.
SampledFunction sample_function(const GridSpec& grid, const nlohmann::json& formula);

/// Calls fn(flat_index) for every cell whose center lies in the closed ball,
/// in increasing index order.
template <class Fn>
void for_each_cell_in_ball(const GridSpec& grid, const Ball& ball, Fn&& fn);

/// Half-open range [lo, hi) of cell indices along one axis whose centers
/// satisfy |coord - x| <= half_width, clipped to the grid.
std::array<long, 2> axis_range(const GridSpec& grid, double x, double half_width);

/// Column range [lo, hi) of the cells of row j inside the closed ball of
/// radius r_slack (already including the tie slack) around c. 2-D only.
std::array<long, 2> ball_row_span(const GridSpec& grid, const Point& c, double r_slack, long j);

/// Midpoint quadrature h^n * sum of values, over the ball when given.
double integrate(const SampledFunction& f, const std::optional<Ball>& over = std::nullopt);

/// h^n * #{cells with value > t}.
double distribution_function(const SampledFunction& f, double t);

// ---------------------------------------------------------------------------

namespace detail {
inline double slack_radius(double r) { return r * (1.0 + 1e-12); }
}  // namespace detail

template <class Fn>
void for_each_cell_in_ball(const GridSpec& grid, const Ball& ball, Fn&& fn) {
  const double r = detail::slack_radius(ball.radius);
  if (grid.dim == 1) {
    const auto [lo, hi] = axis_range(grid, ball.center[0], r);
    for (long i = lo; i < hi; ++i) fn(static_cast<std::size_t>(i));
    return;
  }
  const long n = grid.cells_per_axis();
  const auto [jlo, jhi] = axis_range(grid, ball.center[1], r);
  for (long j = jlo; j < jhi; ++j) {
    const auto [ilo, ihi] = ball_row_span(grid, ball.center, r, j);
    for (long i = ilo; i < ihi; ++i) fn(static_cast<std::size_t>(j * n + i));
  }
}

}  // namespace olab
