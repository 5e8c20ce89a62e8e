#include "olab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "olab/errors.hpp"
#include "olab/numeric.hpp"

namespace olab {

std::string_view to_string(NormKind k) noexcept {
  switch (k) {
    case NormKind::orlicz:
      return "orlicz";
    case NormKind::weak_orlicz:
      return "weak-orlicz";
    case NormKind::morrey:
      return "morrey";
    case NormKind::weak_morrey:
      return "weak-morrey";
  }
  return "?";
}

namespace {

constexpr double kRelTol = 1e-9;

// Smallest lambda in the bracket with constraint(lambda) true; the
// constraint is monotone (false below the gauge, true above).
double gauge_bisect(double max_value, const std::function<bool(double)>& ok) {
  double lo = 1e-12 * max_value;
  double hi = 1e12 * max_value + 1e-300;
  if (!ok(hi)) return kInfinity;
  if (ok(lo)) return lo;
  while (hi > lo * (1.0 + kRelTol)) {
    const double mid = std::sqrt(lo) * std::sqrt(hi);
    if (mid <= lo || mid >= hi) break;
    if (ok(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

// Weak functional for descending-sorted positive values: the candidate set
// is the last entry of each tie group, where the count of f >= v is k + 1.
template <class Term>
double weak_scan(std::span<const double> desc, Term&& term) {
  double best = 0.0;
  for (std::size_t k = 0; k < desc.size(); ++k) {
    if (k + 1 < desc.size() && desc[k + 1] == desc[k]) continue;
    best = std::max(best, term(desc[k], static_cast<double>(k + 1)));
  }
  return best;
}

double weak_gauge_sorted(std::span<const double> desc, double w, const YoungFunction& phi) {
  if (desc.empty()) return 0.0;
  const double m = desc.front();
  if (is_infinite(m)) return kInfinity;
  if (auto p = phi.homogeneity()) {
    const double s = weak_scan(desc, [&](double v, double k) { return k * std::pow(v / m, *p); });
    return m * std::pow(w * s, 1.0 / *p);
  }
  return gauge_bisect(m, [&](double lambda) {
    return weak_scan(desc, [&](double v, double k) { return phi(v / lambda) * k * w; }) <= 1.0;
  });
}

std::vector<double> positive_values(std::span<const double> values) {
  std::vector<double> out;
  for (double v : values) {
    if (v > 0.0) out.push_back(v);
  }
  return out;
}

std::vector<double> values_in(const SampledFunction& f, const std::optional<Ball>& over) {
  if (!over) return positive_values(f.values());
  std::vector<double> out;
  for_each_cell_in_ball(f.grid(), *over, [&](std::size_t k) {
    if (f[k] > 0.0) out.push_back(f[k]);
  });
  return out;
}

}  // namespace

double luxemburg_gauge(std::span<const double> values, double w, const YoungFunction& phi) {
  double m = 0.0;
  for (double v : values) m = std::max(m, v);
  if (m == 0.0) return 0.0;
  if (is_infinite(m)) return kInfinity;
  if (auto p = phi.homogeneity()) {
    double s = 0.0;
    for (double v : values) s += std::pow(v / m, *p);
    return m * std::pow(w * s, 1.0 / *p);
  }
  return gauge_bisect(m, [&](double lambda) {
    double s = 0.0;
    for (double v : values) {
      if (v > 0.0) s += phi(v / lambda) * w;
      if (s > 1.0) return false;
    }
    return true;
  });
}

double weak_gauge(std::span<const double> values, double w, const YoungFunction& phi) {
  std::vector<double> desc = positive_values(values);
  std::sort(desc.begin(), desc.end(), std::greater<>());
  return weak_gauge_sorted(desc, w, phi);
}

NormEvaluation luxemburg_norm(const SampledFunction& f, const YoungFunction& phi, const std::optional<Ball>& over) {
  const std::vector<double> v = values_in(f, over);
  return {luxemburg_gauge(v, f.grid().cell_volume(), phi), std::nullopt, std::nullopt, NormKind::orlicz};
}

NormEvaluation weak_orlicz_norm(const SampledFunction& f, const YoungFunction& phi, const std::optional<Ball>& over) {
  const std::vector<double> v = values_in(f, over);
  return {weak_gauge(v, f.grid().cell_volume(), phi), std::nullopt, std::nullopt, NormKind::weak_orlicz};
}

// ---------------------------------------------------------------------------

std::vector<double> MorreySampling::radius_set(const GridSpec& grid) const {
  const double lo = r_min.value_or(4.0 * grid.h);
  const double hi = r_max.value_or(2.0 * grid.extent);
  if (radii < 1 || !(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
    throw ConfigError("Morrey sampling needs radii >= 1 and 0 < r_min <= r_max < inf");
  }
  if (radii == 1) return {lo};
  std::vector<double> out(radii);
  const double octaves = std::log2(hi / lo);
  for (int k = 0; k < radii; ++k) out[k] = lo * std::exp2(octaves * k / (radii - 1));
  out.back() = hi;
  return out;
}

std::vector<Point> MorreySampling::center_set(const SampledFunction& f) const {
  if (center_stride < 1) throw ConfigError("Morrey sampling needs a positive center stride");
  const GridSpec& g = f.grid();
  const long n = g.cells_per_axis();
  std::vector<Point> out;
  if (g.dim == 1) {
    for (long i = 0; i < n; i += center_stride) out.push_back({g.coord(i), 0.0});
  } else {
    for (long j = 0; j < n; j += center_stride) {
      for (long i = 0; i < n; i += center_stride) out.push_back({g.coord(i), g.coord(j)});
    }
  }
  if (support_centroid) {
    Point c{0.0, 0.0};
    std::size_t count = 0;
    for (std::size_t k = 0; k < f.size(); ++k) {
      if (f[k] > 0.0) {
        const Point p = g.point(k);
        c[0] += p[0];
        c[1] += p[1];
        ++count;
      }
    }
    if (count > 0) {
      c[0] /= static_cast<double>(count);
      c[1] /= static_cast<double>(count);
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
  }
  if (out.empty()) throw ConfigError("Morrey sampling produced no centers");
  return out;
}

std::string MorreySampling::describe(const GridSpec& grid) const {
  std::ostringstream os;
  os << "stride " << center_stride << (support_centroid ? " + support centroid" : "") << ", " << radii
     << " radii in [" << r_min.value_or(4.0 * grid.h) << ", " << r_max.value_or(2.0 * grid.extent) << "]";
  return os.str();
}

namespace {

struct BallValue {
  double value = -1.0;
  std::size_t center = 0;
};

bool center_less(const Point& a, const Point& b) {
  return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
}

// Per-radius maxima of the Morrey quantity over the sampled centers. Each
// center grows its ball through the ascending radii, adding only the new
// cells, so the ball norms come from running sums or merged sorted lists.
std::vector<BallValue> morrey_profile(const SampledFunction& f, const YoungFunction& phi,
                                      const GrowthFunction& varphi, bool weak, const std::vector<double>& radii,
                                      const std::vector<Point>& centers) {
  const GridSpec& g = f.grid();
  const double w = g.cell_volume();
  const std::size_t nr = radii.size();
  const std::size_t nc = centers.size();
  const std::optional<double> homog = phi.homogeneity();
  const double fmax = f.max_value();

  // Phi^{-1}(1/|B|) / varphi(r) with the lattice measure of the ball.
  const auto prefactor = [&](const Point& c, double r) {
    const double phr = varphi(r);
    if (!(phr > 0.0) || !std::isfinite(phr)) throw ConfigError("growth function must be positive and finite");
    return phi.inverse(1.0 / lattice_ball_measure(g, Ball{c, r})) / phr;
  };
  std::vector<double> lattice_pre(nr);
  for (std::size_t k = 0; k < nr; ++k) lattice_pre[k] = prefactor(g.point(0), radii[k]);
  const auto on_lattice = [&](const Point& c) {
    const auto snap = [&](double x) { return g.coord(g.nearest_index(x)) == x; };
    return snap(c[0]) && (g.dim == 1 || snap(c[1]));
  };

  // Off-lattice centers (the support centroid) get their own measures;
  // everything that can throw stays outside the parallel region.
  std::vector<std::vector<double>> own_pre(nc);
  for (std::size_t ci = 0; ci < nc; ++ci) {
    if (on_lattice(centers[ci])) continue;
    own_pre[ci].resize(nr);
    for (std::size_t k = 0; k < nr; ++k) own_pre[ci][k] = prefactor(centers[ci], radii[k]);
  }

  std::vector<double> q(nc * nr, 0.0);

#pragma omp parallel for schedule(dynamic)
  for (std::size_t ci = 0; ci < nc; ++ci) {
    const Point& c = centers[ci];
    const std::vector<double>& pre = own_pre[ci].empty() ? lattice_pre : own_pre[ci];
    const long n = g.cells_per_axis();
    std::vector<std::array<long, 2>> row(g.dim == 1 ? 1 : static_cast<std::size_t>(n), {0, 0});
    std::vector<double> in_ball;  // positive values, sorted descending in weak mode
    std::vector<double> fresh;
    double power_sum = 0.0;
    double last_norm = 0.0;
    bool dirty = true;

    const auto add = [&](long i, long j) {
      const double v = f[static_cast<std::size_t>(j * n + i)];
      if (v > 0.0) fresh.push_back(v);
    };
    const auto grow_row = [&](std::array<long, 2>& cur, std::array<long, 2> nxt, long j) {
      if (nxt[0] >= nxt[1]) return;
      if (cur[0] >= cur[1]) {
        for (long i = nxt[0]; i < nxt[1]; ++i) add(i, j);
      } else {
        for (long i = nxt[0]; i < cur[0]; ++i) add(i, j);
        for (long i = cur[1]; i < nxt[1]; ++i) add(i, j);
      }
      cur = nxt;
    };

    for (std::size_t k = 0; k < nr; ++k) {
      const double r = detail::slack_radius(radii[k]);
      fresh.clear();
      if (g.dim == 1) {
        grow_row(row[0], axis_range(g, c[0], r), 0);
      } else {
        const auto [jlo, jhi] = axis_range(g, c[1], r);
        for (long j = jlo; j < jhi; ++j) grow_row(row[static_cast<std::size_t>(j)], ball_row_span(g, c, r, j), j);
      }
      if (!fresh.empty()) {
        dirty = true;
        if (homog && !weak) {
          for (double v : fresh) power_sum += std::pow(v / fmax, *homog);
        } else if (weak) {
          std::sort(fresh.begin(), fresh.end(), std::greater<>());
          const std::size_t mid = in_ball.size();
          in_ball.insert(in_ball.end(), fresh.begin(), fresh.end());
          std::inplace_merge(in_ball.begin(), in_ball.begin() + static_cast<long>(mid), in_ball.end(),
                             std::greater<>());
        } else {
          in_ball.insert(in_ball.end(), fresh.begin(), fresh.end());
        }
      }
      if (dirty) {
        if (homog && !weak) {
          last_norm = power_sum > 0.0 ? fmax * std::pow(w * power_sum, 1.0 / *homog) : 0.0;
        } else if (weak) {
          last_norm = weak_gauge_sorted(in_ball, w, phi);
        } else {
          last_norm = luxemburg_gauge(in_ball, w, phi);
        }
        dirty = false;
      }
      if (last_norm > 0.0) {
        q[ci * nr + k] = pre[k] * last_norm;
      }
    }
  }

  std::vector<BallValue> best(nr);
  for (std::size_t k = 0; k < nr; ++k) {
    for (std::size_t ci = 0; ci < nc; ++ci) {
      const double v = q[ci * nr + k];
      if (v > best[k].value || (v == best[k].value && center_less(centers[ci], centers[best[k].center]))) {
        best[k] = {v, ci};
      }
    }
  }
  return best;
}

// Sup over the radius indices [lo, hi); ties go to the smaller radius, then
// the smaller center.
std::pair<double, std::size_t> sup_over(const std::vector<BallValue>& profile, std::size_t lo, std::size_t hi) {
  double best = -1.0;
  std::size_t arg = lo;
  for (std::size_t k = lo; k < hi; ++k) {
    if (profile[k].value > best) {
      best = profile[k].value;
      arg = k;
    }
  }
  return {std::max(best, 0.0), arg};
}

}  // namespace

NormEvaluation generalized_orlicz_morrey_norm(const SampledFunction& f, const YoungFunction& phi,
                                              const GrowthFunction& varphi, bool weak,
                                              const MorreySampling& sampling) {
  const std::vector<double> radii = sampling.radius_set(f.grid());
  const std::vector<Point> centers = sampling.center_set(f);
  const auto profile = morrey_profile(f, phi, varphi, weak, radii, centers);
  const auto [value, k] = sup_over(profile, 0, radii.size());
  NormEvaluation out;
  out.value = value;
  out.kind = weak ? NormKind::weak_morrey : NormKind::morrey;
  out.truncation = Truncation{radii.front(), radii.back(), sampling.describe(f.grid())};
  if (!is_infinite(value)) out.witness = Ball{centers[profile[k].center], radii[k]};
  return out;
}

ConditionReport triviality_probe(const YoungFunction& phi, const GrowthFunction& varphi, const GridSpec& grid,
                                 const MorreySampling& sampling) {
  const SampledFunction chi = sample_function(grid, {{"type", "ball_indicator"}, {"radius", 1.0}});
  const std::vector<double> radii = sampling.radius_set(grid);
  const std::vector<Point> centers = sampling.center_set(chi);
  const auto profile = morrey_profile(chi, phi, varphi, false, radii, centers);
  const auto count_upto = [&](double r) {
    return static_cast<std::size_t>(std::upper_bound(radii.begin(), radii.end(), r * (1 + 1e-12)) - radii.begin());
  };
  const auto first_from = [&](double r) {
    return static_cast<std::size_t>(std::lower_bound(radii.begin(), radii.end(), r * (1 - 1e-12)) - radii.begin());
  };

  ConditionReport report;
  report.condition = "triviality";
  report.range = sampling.describe(grid);

  std::vector<double> up;
  for (double rmax = 2.0; rmax <= radii.back() * (1 + 1e-12); rmax *= 2.0) {
    const auto [v, k] = sup_over(profile, 0, count_upto(rmax));
    report.steps.push_back({"r_max", rmax, v, radii[k]});
    up.push_back(v);
  }
  std::vector<double> down;
  for (double rmin = 0.25; rmin >= radii.front() * (1 - 1e-12); rmin *= 0.5) {
    const auto [v, k] = sup_over(profile, first_from(rmin), radii.size());
    report.steps.push_back({"r_min", rmin, v, radii[k]});
    down.push_back(v);
  }
  const Verdict a = assess_doublings(up);
  const Verdict b = assess_doublings(down);
  if (a == Verdict::diverges || b == Verdict::diverges) {
    report.verdict = Verdict::diverges;
  } else if (a == Verdict::holds_stable && b == Verdict::holds_stable) {
    report.verdict = Verdict::holds_stable;
  } else {
    report.verdict = Verdict::inconclusive;
  }
  return report;
}

}  // namespace olab
