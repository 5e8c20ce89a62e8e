// Brute-force operators: no prefix sums, no tables, no threads. Slow by
// design; they exist so the fast paths have something to agree with.

#include <algorithm>
#include <cmath>

#include "olab/errors.hpp"
#include "olab/operators.hpp"
#include "operators_internal.hpp"

namespace olab::reference {

namespace {

double window_sum(const SampledFunction& f, long lo, long hi) {
  const long n = f.grid().cells_per_axis();
  double s = 0.0;
  for (long i = std::max(lo, 0L); i <= std::min(hi, n - 1); ++i) s += f[static_cast<std::size_t>(i)];
  return s;
}

double ball_value(const SampledFunction& f, const Ball& b, double alpha) {
  const GridSpec& g = f.grid();
  double s = 0.0;
  for_each_cell_in_ball(g, b, [&](std::size_t k) { s += f[k]; });
  return detail::ball_average(lattice_ball_measure(g, b) / g.cell_volume(), s, g, alpha);
}

}  // namespace

SampledFunction maximal(const SampledFunction& f, const OperatorSpec& spec) {
  const GridSpec& g = f.grid();
  spec.validate(g.dim);
  const long n = g.cells_per_axis();
  std::vector<double> out(g.size(), 0.0);
  if (f.is_zero()) return SampledFunction(g, std::move(out));

  if (g.dim == 1) {
    const long kmax = spec.max_radius ? static_cast<long>(std::floor(detail::slack_radius(*spec.max_radius) / g.h)) : n - 1;
    if (spec.centered) {
      for (long j = 0; j < n; ++j) {
        double best = 0.0;
        for (long k = 0; k <= kmax; ++k) {
          best = std::max(best, detail::ball_average(2.0 * k + 1.0, window_sum(f, j - k, j + k), g, spec.alpha));
        }
        out[static_cast<std::size_t>(j)] = best;
      }
      return SampledFunction(g, std::move(out));
    }
    std::vector<double> w(static_cast<std::size_t>(n * (kmax + 1)));
    for (long i = 0; i < n; ++i) {
      for (long k = 0; k <= kmax; ++k) {
        w[static_cast<std::size_t>(i * (kmax + 1) + k)] =
            detail::ball_average(2.0 * k + 1.0, window_sum(f, i - k, i + k), g, spec.alpha);
      }
    }
    for (long j = 0; j < n; ++j) {
      double best = 0.0;
      for (long i = 0; i < n; ++i) {
        for (long k = std::abs(i - j); k <= kmax; ++k) best = std::max(best, w[static_cast<std::size_t>(i * (kmax + 1) + k)]);
      }
      out[static_cast<std::size_t>(j)] = best;
    }
    return SampledFunction(g, std::move(out));
  }

  const std::vector<double> radii = operator_radius_set(f, spec);
  for (std::size_t t = 0; t < g.size(); ++t) {
    const Point x = g.point(t);
    const double rx = detail::slack_radius(support_reach(f, spec, x));
    double best = 0.0;
    if (spec.centered) {
      for (double r : radii) {
        if (r > rx) break;
        best = std::max(best, ball_value(f, Ball{x, r}, spec.alpha));
      }
    } else {
      for (std::size_t c = 0; c < g.size(); ++c) {
        const Point cp = g.point(c);
        const long a = static_cast<long>(c % static_cast<std::size_t>(n)) - static_cast<long>(t % static_cast<std::size_t>(n));
        const long b = static_cast<long>(c / static_cast<std::size_t>(n)) - static_cast<long>(t / static_cast<std::size_t>(n));
        const double d = std::sqrt(static_cast<double>(a * a + b * b)) * g.h;
        if (d > rx) continue;
        const double rc = detail::slack_radius(support_reach(f, spec, cp));
        best = std::max(best, ball_value(f, Ball{cp, std::max(d, 0.5 * g.h)}, spec.alpha));
        for (double r : radii) {
          if (r <= d) continue;
          if (r > rc) break;
          best = std::max(best, ball_value(f, Ball{cp, r}, spec.alpha));
        }
      }
    }
    out[t] = best;
  }
  return SampledFunction(g, std::move(out));
}

SampledFunction riesz_potential(const SampledFunction& f, double alpha) {
  const GridSpec& g = f.grid();
  if (!(alpha > 0.0 && alpha < g.dim)) throw DomainError("alpha must lie in (0, n)");
  const long n = g.cells_per_axis();
  const double self = detail::riesz_self_weight(g.dim, g.h, alpha);
  std::vector<double> out(g.size(), 0.0);
  for (std::size_t t = 0; t < g.size(); ++t) {
    double s = 0.0;
    for (std::size_t src = 0; src < g.size(); ++src) {
      if (!(f[src] > 0.0)) continue;
      double w;
      if (g.dim == 1) {
        const long k = std::abs(static_cast<long>(src) - static_cast<long>(t));
        w = k == 0 ? self : detail::riesz_weight_1d(k, g.h, alpha);
      } else {
        const long a = std::abs(static_cast<long>(src) % n - static_cast<long>(t) % n);
        const long b = std::abs(static_cast<long>(src) / n - static_cast<long>(t) / n);
        w = (a == 0 && b == 0) ? self : detail::riesz_weight_2d(a, b, g.h, alpha);
      }
      s += f[src] * w;
    }
    out[t] = s;
  }
  return SampledFunction(g, std::move(out));
}

}  // namespace olab::reference
