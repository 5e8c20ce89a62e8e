#include "olab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "olab/errors.hpp"
#include "olab/numeric.hpp"
#include "operators_internal.hpp"

namespace olab {

void OperatorSpec::validate(int n) const {
  if (!(alpha >= 0.0 && alpha < n)) throw DomainError("alpha must lie in [0, n)");
  if (log_radii < 1) throw ConfigError("need at least one log radius");
  if (lattice_radius_cells < 0) throw ConfigError("lattice radius bound must be nonnegative");
  if (max_radius && !(*max_radius > 0.0)) throw ConfigError("max_radius must be positive");
}

namespace detail {

SupportBox support_box(const SampledFunction& f) {
  SupportBox box;
  const GridSpec& g = f.grid();
  const long n = g.cells_per_axis();
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (!(f[k] > 0.0)) continue;
    const long i = g.dim == 1 ? static_cast<long>(k) : static_cast<long>(k) % n;
    const long j = g.dim == 1 ? 0 : static_cast<long>(k) / n;
    if (box.empty) {
      box = {false, i, i, j, j};
    } else {
      box.ilo = std::min(box.ilo, i);
      box.ihi = std::max(box.ihi, i);
      box.jlo = std::min(box.jlo, j);
      box.jhi = std::max(box.jhi, j);
    }
  }
  return box;
}

long disk_half_width(double t, long dj) {
  const double rem = t - static_cast<double>(dj * dj);
  if (rem < 0.0) return -1;
  long w = static_cast<long>(std::floor(std::sqrt(rem)));
  while (static_cast<double>((w + 1) * (w + 1)) <= rem) ++w;
  while (w > 0 && static_cast<double>(w * w) > rem) --w;
  return w;
}

double riesz_self_weight(int dim, double h, double alpha) {
  if (dim == 1) return 2.0 * std::pow(0.5 * h, alpha) / alpha;
  const double rho = h / std::sqrt(std::numbers::pi);
  return 2.0 * std::numbers::pi * std::pow(rho, alpha) / alpha;
}

}  // namespace detail

namespace {

using detail::ball_average;
using detail::SupportBox;

double farthest_corner(const GridSpec& g, const SupportBox& box, const Point& x) {
  const double dx = std::max(std::abs(x[0] - g.coord(box.ilo)), std::abs(x[0] - g.coord(box.ihi)));
  const double dy = g.dim == 1 ? 0.0 : std::max(std::abs(x[1] - g.coord(box.jlo)), std::abs(x[1] - g.coord(box.jhi)));
  return std::hypot(dx, dy);
}

double box_distance(const GridSpec& g, const SupportBox& box, const Point& x) {
  const auto gap = [&](double v, long lo, long hi) {
    return std::max({0.0, g.coord(lo) - v, v - g.coord(hi)});
  };
  const double dx = gap(x[0], box.ilo, box.ihi);
  const double dy = g.dim == 1 ? 0.0 : gap(x[1], box.jlo, box.jhi);
  return std::hypot(dx, dy);
}

double reach(const GridSpec& g, const SupportBox& box, const OperatorSpec& spec, const Point& x) {
  if (spec.max_radius) return *spec.max_radius;
  if (box.empty) return 0.0;
  return farthest_corner(g, box, x) + g.h;
}

// Lattice-disk table for one radius: half-widths per row offset and the
// total lattice count.
struct Disk {
  double radius = 0;
  std::vector<long> half;  // index |dj|
  double count = 0;
};

Disk make_disk(double radius, double h) {
  Disk d;
  d.radius = radius;
  const double t = std::pow(detail::slack_radius(radius) / h, 2);
  for (long dj = 0;; ++dj) {
    const long w = detail::disk_half_width(t, dj);
    if (w < 0) break;
    d.half.push_back(w);
    d.count += (dj == 0 ? 1.0 : 2.0) * static_cast<double>(2 * w + 1);
  }
  return d;
}

// Row-wise prefix sums: P[j * (n + 1) + i] = sum of row j over [0, i).
std::vector<double> row_prefix(const SampledFunction& f) {
  const GridSpec& g = f.grid();
  const long n = g.cells_per_axis();
  const long rows = g.dim == 1 ? 1 : n;
  std::vector<double> p(static_cast<std::size_t>(rows * (n + 1)), 0.0);
  for (long j = 0; j < rows; ++j) {
    double s = 0.0;
    for (long i = 0; i < n; ++i) {
      s += f[static_cast<std::size_t>(j * n + i)];
      p[static_cast<std::size_t>(j * (n + 1) + i + 1)] = s;
    }
  }
  return p;
}

// Raw value sum of the lattice disk centered at cell (ci, cj).
double disk_sum(const std::vector<double>& p, long n, const Disk& d, long ci, long cj, const SupportBox& box) {
  double s = 0.0;
  const long kmax = static_cast<long>(d.half.size()) - 1;
  const long jlo = std::max(cj - kmax, box.jlo);
  const long jhi = std::min(cj + kmax, box.jhi);
  for (long j = jlo; j <= jhi; ++j) {
    const long w = d.half[static_cast<std::size_t>(std::abs(j - cj))];
    const long lo = std::max(ci - w, 0L);
    const long hi = std::min(ci + w + 1, n);
    if (lo >= hi) continue;
    const std::size_t row = static_cast<std::size_t>(j * (n + 1));
    s += p[row + static_cast<std::size_t>(hi)] - p[row + static_cast<std::size_t>(lo)];
  }
  return s;
}

std::vector<double> pow_table(const GridSpec& g, double alpha, long kmax) {
  std::vector<double> t(static_cast<std::size_t>(kmax + 1));
  for (long k = 0; k <= kmax; ++k) t[static_cast<std::size_t>(k)] = std::pow((2.0 * k + 1.0) * g.h, alpha - 1.0) * g.h;
  return t;
}

long scan_limit(const GridSpec& g, const SupportBox& box, const OperatorSpec& spec, long j) {
  if (spec.max_radius) return static_cast<long>(std::floor(detail::slack_radius(*spec.max_radius) / g.h));
  return std::max(std::abs(j - box.ilo), std::abs(j - box.ihi));
}

SampledFunction centered_1d(const SampledFunction& f, const OperatorSpec& spec, const SupportBox& box) {
  const GridSpec& g = f.grid();
  const long n = g.cells_per_axis();
  long kmax = 0;
  for (long j : {0L, n - 1}) kmax = std::max(kmax, scan_limit(g, box, spec, j));
  const std::vector<double> pw = pow_table(g, spec.alpha, kmax);
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
#pragma omp parallel for schedule(static)
  for (long j = 0; j < n; ++j) {
    const long lim = scan_limit(g, box, spec, j);
    double s = 0.0;
    double best = 0.0;
    for (long k = 0; k <= lim; ++k) {
      if (j - k >= 0) s += f[static_cast<std::size_t>(j - k)];
      if (k > 0 && j + k < n) s += f[static_cast<std::size_t>(j + k)];
      best = std::max(best, pw[static_cast<std::size_t>(k)] * s);
    }
    out[static_cast<std::size_t>(j)] = best;
  }
  return SampledFunction(g, std::move(out));
}

// For each half-width k, the window sums W_k(i) over [i - k, i + k] and a
// sliding maximum over the centers i with |i - j| <= k give every lattice
// ball of that size containing cell j.
SampledFunction uncentered_1d(const SampledFunction& f, const OperatorSpec& spec) {
  const GridSpec& g = f.grid();
  const long n = g.cells_per_axis();
  const long kmax = spec.max_radius ? static_cast<long>(std::floor(detail::slack_radius(*spec.max_radius) / g.h)) : n - 1;
  const std::vector<double> pw = pow_table(g, spec.alpha, kmax);
  const std::vector<double> p = row_prefix(f);
  std::vector<double> best(static_cast<std::size_t>(n), 0.0);

#pragma omp parallel
  {
    std::vector<double> local(static_cast<std::size_t>(n), 0.0);
    std::vector<double> val(static_cast<std::size_t>(n));
    std::deque<long> dq;
#pragma omp for schedule(dynamic, 16)
    for (long k = 0; k <= kmax; ++k) {
      for (long i = 0; i < n; ++i) {
        const long hi = std::min(i + k + 1, n);
        const long lo = std::max(i - k, 0L);
        val[static_cast<std::size_t>(i)] = pw[static_cast<std::size_t>(k)] * (p[static_cast<std::size_t>(hi)] - p[static_cast<std::size_t>(lo)]);
      }
      dq.clear();
      long next = 0;
      for (long j = 0; j < n; ++j) {
        for (; next < n && next <= j + k; ++next) {
          while (!dq.empty() && val[static_cast<std::size_t>(dq.back())] <= val[static_cast<std::size_t>(next)]) dq.pop_back();
          dq.push_back(next);
        }
        while (dq.front() < j - k) dq.pop_front();
        local[static_cast<std::size_t>(j)] = std::max(local[static_cast<std::size_t>(j)], val[static_cast<std::size_t>(dq.front())]);
      }
    }
#pragma omp critical
    for (long j = 0; j < n; ++j) best[static_cast<std::size_t>(j)] = std::max(best[static_cast<std::size_t>(j)], local[static_cast<std::size_t>(j)]);
  }
  return SampledFunction(g, std::move(best));
}

SampledFunction centered_2d(const SampledFunction& f, const OperatorSpec& spec, const SupportBox& box) {
  const GridSpec& g = f.grid();
  const long n = g.cells_per_axis();
  const std::vector<double> radii = operator_radius_set(f, spec);
  std::vector<Disk> disks;
  for (double r : radii) disks.push_back(make_disk(r, g.h));
  const std::vector<double> p = row_prefix(f);
  std::vector<double> out(g.size(), 0.0);
#pragma omp parallel for schedule(dynamic, 64)
  for (long flat = 0; flat < static_cast<long>(g.size()); ++flat) {
    const long ci = flat % n;
    const long cj = flat / n;
    const Point x{g.coord(ci), g.coord(cj)};
    const double rx = detail::slack_radius(reach(g, box, spec, x));
    const double gap = box_distance(g, box, x);
    double best = 0.0;
    for (const Disk& d : disks) {
      if (d.radius > rx) break;
      if (detail::slack_radius(d.radius) < gap) continue;
      best = std::max(best, ball_average(d.count, disk_sum(p, n, d, ci, cj, box), g, spec.alpha));
    }
    out[static_cast<std::size_t>(flat)] = best;
  }
  return SampledFunction(g, std::move(out));
}

SampledFunction uncentered_2d(const SampledFunction& f, const OperatorSpec& spec, const SupportBox& box) {
  const GridSpec& g = f.grid();
  const long n = g.cells_per_axis();
  const std::vector<double> radii = operator_radius_set(f, spec);
  std::vector<Disk> disks;
  for (double r : radii) disks.push_back(make_disk(r, g.h));
  const std::vector<double> p = row_prefix(f);
  std::vector<double> out(g.size(), 0.0);
#pragma omp parallel for schedule(dynamic, 16)
  for (long flat = 0; flat < static_cast<long>(g.size()); ++flat) {
    const long xi = flat % n;
    const long xj = flat / n;
    const Point x{g.coord(xi), g.coord(xj)};
    const double rx = reach(g, box, spec, x);
    const long span = static_cast<long>(std::floor(detail::slack_radius(rx) / g.h));
    double best = 0.0;
    for (long cj = std::max(0L, xj - span); cj <= std::min(n - 1, xj + span); ++cj) {
      for (long ci = std::max(0L, xi - span); ci <= std::min(n - 1, xi + span); ++ci) {
        const long a = ci - xi;
        const long b = cj - xj;
        const double d = std::sqrt(static_cast<double>(a * a + b * b)) * g.h;
        if (d > detail::slack_radius(rx)) continue;
        const Point c{g.coord(ci), g.coord(cj)};
        const double rc = detail::slack_radius(reach(g, box, spec, c));
        const Disk own = make_disk(d, g.h);
        best = std::max(best, ball_average(own.count, disk_sum(p, n, own, ci, cj, box), g, spec.alpha));
        for (const Disk& disk : disks) {
          if (disk.radius <= d) continue;
          if (disk.radius > rc) break;
          best = std::max(best, ball_average(disk.count, disk_sum(p, n, disk, ci, cj, box), g, spec.alpha));
        }
      }
    }
    out[static_cast<std::size_t>(flat)] = best;
  }
  return SampledFunction(g, std::move(out));
}

}  // namespace

std::vector<double> operator_radius_set(const SampledFunction& f, const OperatorSpec& spec) {
  const GridSpec& g = f.grid();
  const SupportBox box = detail::support_box(f);
  double rmax = g.h;
  if (spec.max_radius) {
    rmax = *spec.max_radius;
  } else if (!box.empty) {
    const long n = g.cells_per_axis();
    for (long j : {0L, n - 1}) {
      for (long i : {0L, n - 1}) {
        rmax = std::max(rmax, reach(g, box, spec, {g.coord(i), g.dim == 1 ? 0.0 : g.coord(j)}));
      }
    }
  }
  std::vector<double> out;
  if (rmax <= g.h || spec.log_radii == 1) {
    out.push_back(std::min(rmax, g.h));
  } else {
    const double octaves = std::log2(rmax / g.h);
    for (int k = 0; k < spec.log_radii; ++k) out.push_back(g.h * std::exp2(octaves * k / (spec.log_radii - 1)));
    out.back() = rmax;
  }
  // Radius h/2 stands for the single-cell ball.
  out.push_back(0.5 * g.h);
  const long m = spec.lattice_radius_cells;
  for (long a = 1; a < m; ++a) {
    for (long b = 0; b <= (g.dim == 1 ? 0 : a); ++b) {
      if (a * a + b * b < m * m) out.push_back(std::sqrt(static_cast<double>(a * a + b * b)) * g.h);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double support_reach(const SampledFunction& f, const OperatorSpec& spec, const Point& x) {
  return reach(f.grid(), detail::support_box(f), spec, x);
}

SampledFunction maximal(const SampledFunction& f, const OperatorSpec& spec) {
  const GridSpec& g = f.grid();
  spec.validate(g.dim);
  const SupportBox box = detail::support_box(f);
  if (box.empty) return SampledFunction::zeros(g);
  if (g.dim == 1) return spec.centered ? centered_1d(f, spec, box) : uncentered_1d(f, spec);
  return spec.centered ? centered_2d(f, spec, box) : uncentered_2d(f, spec, box);
}

double maximal_at(const SampledFunction& f, const OperatorSpec& spec, const Point& x) {
  const GridSpec& g = f.grid();
  spec.validate(g.dim);
  const SupportBox box = detail::support_box(f);
  if (box.empty) return 0.0;
  const double rx = reach(g, box, spec, x);
  double best = 0.0;

  if (g.dim == 1) {
    const long n = g.cells_per_axis();
    const auto value_at = [&](long i) { return i >= 0 && i < n ? f[static_cast<std::size_t>(i)] : 0.0; };
    if (spec.centered) {
      // Expand outward through the lattice distances from x, ties together.
      long left = static_cast<long>(std::floor((x[0] + g.extent) / g.h - 0.5));
      long right = left + 1;
      double s = 0.0;
      double count = 0.0;
      while (true) {
        const double dl = x[0] - g.coord(left);
        const double dr = g.coord(right) - x[0];
        const double d = std::min(dl, dr);
        if (d > detail::slack_radius(rx)) break;
        const double lim = detail::slack_radius(d);
        while (x[0] - g.coord(left) <= lim) {
          s += value_at(left--);
          count += 1.0;
        }
        while (g.coord(right) - x[0] <= lim) {
          s += value_at(right++);
          count += 1.0;
        }
        best = std::max(best, ball_average(count, s, g, spec.alpha));
      }
      return best;
    }
    const std::vector<double> p = row_prefix(f);
    const long kmax = n;
    for (long i = 0; i < n; ++i) {
      const double m = std::abs(g.coord(i) - x[0]) / g.h;
      if (m * g.h > detail::slack_radius(rx)) continue;
      for (long k = static_cast<long>(std::floor(m + 1e-9)); k <= kmax; ++k) {
        const long hi = std::min(i + k + 1, n);
        const long lo = std::max(i - k, 0L);
        best = std::max(best, ball_average(2.0 * k + 1.0, p[static_cast<std::size_t>(hi)] - p[static_cast<std::size_t>(lo)], g, spec.alpha));
      }
    }
    return best;
  }

  // 2-D: direct ball sums on the radius set, plus the distances from x to
  // nearby lattice points.
  const auto ball_value = [&](const Ball& b) {
    double s = 0.0;
    for_each_cell_in_ball(g, b, [&](std::size_t k) { s += f[k]; });
    const double meas = lattice_ball_measure(g, b);
    return std::pow(meas, spec.alpha / 2.0 - 1.0) * s * g.cell_volume();
  };
  std::vector<double> radii = operator_radius_set(f, spec);
  const long n = g.cells_per_axis();
  const long xi = g.nearest_index(x[0]);
  const long xj = g.nearest_index(x[1]);
  const long m = spec.lattice_radius_cells;
  for (long j = xj - m; j <= xj + m; ++j) {
    for (long i = xi - m; i <= xi + m; ++i) {
      const double d = std::hypot(g.coord(i) - x[0], g.coord(j) - x[1]);
      if (d > 0.0 && d < m * g.h) radii.push_back(d);
    }
  }
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  if (spec.centered) {
    for (double r : radii) {
      if (r > detail::slack_radius(rx)) break;
      best = std::max(best, ball_value(Ball{x, r}));
    }
    return best;
  }
  const long span = static_cast<long>(std::floor(rx / g.h)) + 1;
  for (long cj = std::max(0L, xj - span); cj <= std::min(n - 1, xj + span); ++cj) {
    for (long ci = std::max(0L, xi - span); ci <= std::min(n - 1, xi + span); ++ci) {
      const Point c{g.coord(ci), g.coord(cj)};
      const double d = std::hypot(c[0] - x[0], c[1] - x[1]);
      if (d > detail::slack_radius(rx)) continue;
      const double rc = detail::slack_radius(reach(g, box, spec, c));
      best = std::max(best, ball_value(Ball{c, std::max(d, 0.5 * g.h)}));
      for (double r : radii) {
        if (r <= d) continue;
        if (r > rc) break;
        best = std::max(best, ball_value(Ball{c, r}));
      }
    }
  }
  return best;
}

// ---------------------------------------------------------------------------

SampledFunction riesz_potential(const SampledFunction& f, double alpha) {
  const GridSpec& g = f.grid();
  if (!(alpha > 0.0 && alpha < g.dim)) throw DomainError("alpha must lie in (0, n)");
  const long n = g.cells_per_axis();
  std::vector<long> sources;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f[k] > 0.0) sources.push_back(static_cast<long>(k));
  }
  std::vector<double> out(g.size(), 0.0);
  const double self = detail::riesz_self_weight(g.dim, g.h, alpha);

  if (g.dim == 1) {
    std::vector<double> w(static_cast<std::size_t>(n));
    w[0] = self;
    for (long k = 1; k < n; ++k) w[static_cast<std::size_t>(k)] = detail::riesz_weight_1d(k, g.h, alpha);
#pragma omp parallel for schedule(static)
    for (long j = 0; j < n; ++j) {
      double s = 0.0;
      for (long src : sources) s += f[static_cast<std::size_t>(src)] * w[static_cast<std::size_t>(std::abs(src - j))];
      out[static_cast<std::size_t>(j)] = s;
    }
    return SampledFunction(g, std::move(out));
  }

  std::vector<double> w(static_cast<std::size_t>(n * n));
  for (long b = 0; b < n; ++b) {
    for (long a = 0; a < n; ++a) {
      w[static_cast<std::size_t>(b * n + a)] = (a == 0 && b == 0) ? self : detail::riesz_weight_2d(a, b, g.h, alpha);
    }
  }
#pragma omp parallel for schedule(static)
  for (long t = 0; t < static_cast<long>(g.size()); ++t) {
    const long ti = t % n;
    const long tj = t / n;
    double s = 0.0;
    for (long src : sources) {
      const long a = std::abs(src % n - ti);
      const long b = std::abs(src / n - tj);
      s += f[static_cast<std::size_t>(src)] * w[static_cast<std::size_t>(b * n + a)];
    }
    out[static_cast<std::size_t>(t)] = s;
  }
  return SampledFunction(g, std::move(out));
}

namespace {

// Integral of |y|^(alpha - 2) over [0, a] x [0, b], from the corner at the
// origin: two triangles in polar form, each a smooth 1-D integral.
double corner_rect_integral(double a, double b, double alpha) {
  if (a <= 0.0 || b <= 0.0) return 0.0;
  const auto tri = [alpha](double base, double angle) {
    constexpr int kIntervals = 256;  // Simpson, even count
    const double step = angle / kIntervals;
    double s = 0.0;
    for (int k = 0; k <= kIntervals; ++k) {
      const double th = k * step;
      const double v = std::pow(base / std::cos(th), alpha) / alpha;
      s += v * (k == 0 || k == kIntervals ? 1.0 : (k % 2 ? 4.0 : 2.0));
    }
    return s * step / 3.0;
  };
  return tri(a, std::atan2(b, a)) + tri(b, std::atan2(a, b));
}

}  // namespace

double riesz_at(const SampledFunction& f, double alpha, const Point& x) {
  const GridSpec& g = f.grid();
  if (!(alpha > 0.0 && alpha < g.dim)) throw DomainError("alpha must lie in (0, n)");
  const double half = 0.5 * g.h;
  const double self = detail::riesz_self_weight(g.dim, g.h, alpha);
  double s = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (!(f[k] > 0.0)) continue;
    const Point c = g.point(k);
    const double dx = x[0] - c[0];
    const double dy = g.dim == 1 ? 0.0 : x[1] - c[1];
    const double d = std::hypot(dx, dy);
    double w;
    if (d <= 1e-12 * g.h) {
      w = self;
    } else if (std::abs(dx) <= half && std::abs(dy) <= half) {
      if (g.dim == 1) {
        w = (std::pow(half + dx, alpha) + std::pow(half - dx, alpha)) / alpha;
      } else {
        w = corner_rect_integral(half + dx, half + dy, alpha) + corner_rect_integral(half - dx, half + dy, alpha) +
            corner_rect_integral(half + dx, half - dy, alpha) + corner_rect_integral(half - dx, half - dy, alpha);
      }
    } else {
      w = g.cell_volume() * std::pow(d, alpha - g.dim);
    }
    s += f[k] * w;
  }
  return s;
}

}  // namespace olab
