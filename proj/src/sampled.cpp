#include "olab/sampled.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "olab/errors.hpp"
#include "olab/numeric.hpp"

namespace olab {

void GridSpec::validate() const {
  if (dim != 1 && dim != 2) throw ConfigError("grid dimension must be 1 or 2");
  if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("grid spacing must be positive");
  if (!(extent > 0.0) || !std::isfinite(extent)) throw ConfigError("grid extent must be positive");
  const double ratio = extent / h;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio || std::round(ratio) < 1) {
    throw ConfigError("grid extent must be a positive integer multiple of the spacing");
  }
  if (cells_per_axis() > (dim == 1 ? (1L << 24) : (1L << 12))) {
    throw ConfigError("grid too large");
  }
}

long GridSpec::cells_per_axis() const { return 2 * std::lround(extent / h); }

std::size_t GridSpec::size() const {
  const auto n = static_cast<std::size_t>(cells_per_axis());
  return dim == 1 ? n : n * n;
}

double GridSpec::cell_volume() const { return dim == 1 ? h : h * h; }

long GridSpec::nearest_index(double x) const {
  return static_cast<long>(std::floor((x + extent) / h));
}

Point GridSpec::point(std::size_t flat) const {
  if (dim == 1) return {coord(static_cast<long>(flat)), 0.0};
  const auto n = static_cast<std::size_t>(cells_per_axis());
  return {coord(static_cast<long>(flat % n)), coord(static_cast<long>(flat / n))};
}

GridSpec default_grid(int dim) {
  if (dim == 1) return GridSpec{1, 1.0 / 64, 16.0};
  if (dim == 2) return GridSpec{2, 1.0 / 16, 8.0};
  throw ConfigError("grid dimension must be 1 or 2");
}

double ball_measure(int n, double r) {
  if (!(r > 0.0)) throw DomainError("ball radius must be positive");
  if (n == 1) return 2.0 * r;
  if (n == 2) return std::numbers::pi * r * r;
  throw DomainError("dimension must be 1 or 2");
}

namespace {

// Unclipped index range [lo, hi) of centers with |coord - x| <= w.
std::array<long, 2> raw_range(const GridSpec& g, double x, double w) {
  const auto inside = [&](long i) { return std::abs(g.coord(i) - x) <= w; };
  long lo = static_cast<long>(std::ceil((x - w + g.extent) / g.h - 0.5));
  long hi = static_cast<long>(std::floor((x + w + g.extent) / g.h - 0.5)) + 1;
  while (inside(lo - 1)) --lo;
  while (lo < hi && !inside(lo)) ++lo;
  while (inside(hi)) ++hi;
  while (hi > lo && !inside(hi - 1)) --hi;
  return {lo, std::max(lo, hi)};
}

}  // namespace

std::array<long, 2> axis_range(const GridSpec& grid, double x, double half_width) {
  const long n = grid.cells_per_axis();
  // Clamp far-away windows before converting to integers.
  const double span = grid.extent + grid.h;
  if (x - half_width > span || x + half_width < -span) return {0, 0};
  const double lo_x = std::max(x - half_width, -span);
  const double hi_x = std::min(x + half_width, span);
  // Clipping beyond the outermost centers leaves in-grid membership intact.
  const bool clipped = lo_x > x - half_width || hi_x < x + half_width;
  const auto [lo, hi] = clipped ? raw_range(grid, 0.5 * (lo_x + hi_x), 0.5 * (hi_x - lo_x))
                                : raw_range(grid, x, half_width);
  return {std::clamp(lo, 0L, n), std::clamp(hi, 0L, n)};
}

std::array<long, 2> ball_row_span(const GridSpec& grid, const Point& c, double r, long j) {
  const double dy = grid.coord(j) - c[1];
  const double w2 = r * r - dy * dy;
  if (w2 < 0.0) return {0, 0};
  auto [lo, hi] = axis_range(grid, c[0], std::sqrt(w2));
  const auto inside = [&](long i) {
    const double dx = grid.coord(i) - c[0];
    return dx * dx + dy * dy <= r * r;
  };
  while (lo < hi && !inside(lo)) ++lo;
  while (hi > lo && !inside(hi - 1)) --hi;
  return {lo, hi};
}

double lattice_ball_measure(const GridSpec& grid, const Ball& ball) {
  if (!(ball.radius > 0.0)) throw DomainError("ball radius must be positive");
  const double r = detail::slack_radius(ball.radius);
  if (grid.dim == 1) {
    const auto [lo, hi] = raw_range(grid, ball.center[0], r);
    return static_cast<double>(hi - lo) * grid.h;
  }
  const auto [jlo, jhi] = raw_range(grid, ball.center[1], r);
  long count = 0;
  for (long j = jlo; j < jhi; ++j) {
    const double dy = grid.coord(j) - ball.center[1];
    const double w2 = r * r - dy * dy;
    if (w2 < 0.0) continue;
    const auto [ilo, ihi] = raw_range(grid, ball.center[0], std::sqrt(w2));
    for (long i = ilo; i < ihi; ++i) {
      const double dx = grid.coord(i) - ball.center[0];
      if (dx * dx + dy * dy <= r * r) ++count;
    }
  }
  return static_cast<double>(count) * grid.h * grid.h;
}

// ---------------------------------------------------------------------------

SampledFunction::SampledFunction(GridSpec grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  grid_.validate();
  if (values_.size() != grid_.size()) throw ConfigError("sample count does not match the grid");
  for (double v : values_) {
    if (!(v >= 0.0)) throw DomainError("sampled values must be nonnegative");
  }
}

SampledFunction SampledFunction::zeros(const GridSpec& grid) {
  grid.validate();
  return SampledFunction(grid, std::vector<double>(grid.size(), 0.0));
}

double SampledFunction::max_value() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, v);
  return m;
}

bool SampledFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

SampledFunction SampledFunction::scaled(double c) const {
  if (!(c >= 0.0)) throw DomainError("scale factor must be nonnegative");
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return SampledFunction(grid_, std::move(v));
}

// ---------------------------------------------------------------------------

namespace {

Point read_center(const nlohmann::json& j, int dim) {
  Point c{0.0, 0.0};
  if (!j.contains("center")) return c;
  const auto& arr = j.at("center");
  if (!arr.is_array() || static_cast<int>(arr.size()) != dim) {
    throw ConfigError("center must be an array with one entry per dimension");
  }
  for (int k = 0; k < dim; ++k) c[k] = arr[k].get<double>();
  return c;
}

double read_positive(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("formula is missing '") + key + "'");
  const double v = j.at(key).get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string("'") + key + "' must be positive");
  return v;
}

double read_amplitude(const nlohmann::json& j) {
  const double a = j.value("amplitude", 1.0);
  if (!(a >= 0.0) || !std::isfinite(a)) throw ConfigError("amplitude must be finite and nonnegative");
  return a;
}

double dist(const Point& a, const Point& b, int dim) {
  const double dx = a[0] - b[0];
  const double dy = dim == 2 ? a[1] - b[1] : 0.0;
  return std::sqrt(dx * dx + dy * dy);
}

void accumulate(const GridSpec& g, const nlohmann::json& f, std::vector<double>& out) {
  if (!f.is_object() || !f.contains("type")) throw ConfigError("formula must be an object with a 'type'");
  const std::string type = f.at("type").get<std::string>();
  if (type == "sum") {
    if (!f.contains("terms") || !f.at("terms").is_array()) throw ConfigError("sum needs a 'terms' array");
    for (const auto& t : f.at("terms")) accumulate(g, t, out);
    return;
  }
  if (type == "ball_indicator") {
    Ball b{read_center(f, g.dim), read_positive(f, "radius")};
    const double a = read_amplitude(f);
    for_each_cell_in_ball(g, b, [&](std::size_t k) { out[k] += a; });
    return;
  }
  if (type == "power_decay") {
    if (!f.contains("gamma")) throw ConfigError("power_decay needs 'gamma'");
    const double gamma = f.at("gamma").get<double>();
    if (!(gamma >= 0.0 && gamma < g.dim)) throw ConfigError("power_decay needs 0 <= gamma < n");
    Ball b{read_center(f, g.dim), read_positive(f, "radius")};
    const double a = read_amplitude(f);
    // Mean of |y|^-gamma over the cell (1-D) or over the equal-area disk of
    // radius h / sqrt(pi) (2-D), used where a center hits the singularity.
    double singular;
    if (g.dim == 1) {
      singular = std::pow(0.5 * g.h, -gamma) / (1.0 - gamma);
    } else {
      const double rho = g.h / std::sqrt(std::numbers::pi);
      singular = 2.0 * std::pow(rho, -gamma) / (2.0 - gamma);
    }
    for_each_cell_in_ball(g, b, [&](std::size_t k) {
      const double d = dist(g.point(k), b.center, g.dim);
      out[k] += a * (d <= 1e-12 * g.h ? singular : std::pow(d, -gamma));
    });
    return;
  }
  if (type == "gaussian") {
    const double scale = read_positive(f, "scale");
    const Point c = read_center(f, g.dim);
    const double a = read_amplitude(f);
    for (std::size_t k = 0; k < out.size(); ++k) {
      const double d = dist(g.point(k), c, g.dim) / scale;
      out[k] += a * std::exp(-d * d);
    }
    return;
  }
  throw ConfigError("unsupported formula type '" + type + "'");
}

}  // namespace

SampledFunction sample_function(const GridSpec& grid, const nlohmann::json& formula) {
  grid.validate();
  std::vector<double> values(grid.size(), 0.0);
  try {
    accumulate(grid, formula, values);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed formula: ") + e.what());
  }
  return SampledFunction(grid, std::move(values));
}

double integrate(const SampledFunction& f, const std::optional<Ball>& over) {
  double sum = 0.0;
  if (!over) {
    for (double v : f.values()) sum += v;
  } else {
    for_each_cell_in_ball(f.grid(), *over, [&](std::size_t k) { sum += f[k]; });
  }
  return sum * f.grid().cell_volume();
}

double distribution_function(const SampledFunction& f, double t) {
  if (!(t >= 0.0)) throw DomainError("distribution threshold must be nonnegative");
  std::size_t count = 0;
  for (double v : f.values()) count += v > t ? 1 : 0;
  return static_cast<double>(count) * f.grid().cell_volume();
}

}  // namespace olab
