#include <cmath>
#include <random>

#include "doctest.h"
#include "olab/characterize.hpp"
#include "olab/errors.hpp"
#include "olab/operators.hpp"
#include "oracles.hpp"

using namespace olab;
using nlohmann::json;

namespace {

json indicator(double c, double r) { return {{"type", "ball_indicator"}, {"center", {c}}, {"radius", r}}; }

SampledFunction random_values(const GridSpec& g, std::uint64_t seed, double zero_fraction) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> v(g.size());
  for (double& x : v) x = u(rng) < zero_fraction ? 0.0 : u(rng);
  return SampledFunction(g, v);
}

double max_rel_diff(const SampledFunction& a, const SampledFunction& b) {
  double worst = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double s = std::max({std::abs(a[k]), std::abs(b[k]), 1e-300});
    worst = std::max(worst, std::abs(a[k] - b[k]) / s);
  }
  return worst;
}

}  // namespace

TEST_CASE("operator parameters") {
  OperatorSpec s;
  s.alpha = 1.0;
  CHECK_THROWS_AS(s.validate(1), DomainError);
  CHECK_NOTHROW(s.validate(2));
  s.alpha = -0.1;
  CHECK_THROWS_AS(s.validate(2), DomainError);
  const auto f = sample_function(default_grid(1), indicator(0, 1));
  CHECK_THROWS_AS(riesz_potential(f, 0.0), DomainError);
}

TEST_CASE("fractional maximal closed forms") {
  const GridSpec g = default_grid(1);
  const auto chi = sample_function(g, indicator(0, 1));
  OperatorSpec s;
  s.alpha = 0.5;
  CHECK(maximal_at(chi, s, {0, 0}) == doctest::Approx(oracle::kMaximalAtZero).epsilon(1e-12));
  CHECK(maximal_at(chi, s, {3, 0}) == doctest::Approx(oracle::kMaximalAtThree).epsilon(1e-12));
  const auto m = maximal(chi, s);
  CHECK(m[static_cast<std::size_t>(g.nearest_index(1.0 / 128))] == doctest::Approx(oracle::kMaximalAtZero).epsilon(0.02));
  CHECK(m[static_cast<std::size_t>(g.nearest_index(3.0 - 1.0 / 128))] ==
        doctest::Approx(oracle::kMaximalAtThree).epsilon(0.02));
}

TEST_CASE("constant functions are fixed by M") {
  const GridSpec g{1, 1.0 / 32, 4};
  const SampledFunction c(g, std::vector<double>(g.size(), 2.5));
  const auto m = maximal(c, OperatorSpec{});
  for (std::size_t k = 0; k < m.size(); ++k) CHECK(m[k] == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("Riesz potential") {
  const GridSpec g = default_grid(1);
  const auto chi = sample_function(g, indicator(0, 1));
  CHECK(riesz_at(chi, 0.5, {0, 0}) == doctest::Approx(oracle::kRieszAtZero).epsilon(0.03));
  const auto r = riesz_potential(chi, 0.5);
  CHECK(r[static_cast<std::size_t>(g.nearest_index(1.0 / 128))] == doctest::Approx(oracle::kRieszAtZero).epsilon(0.03));
  const auto z = riesz_potential(SampledFunction::zeros(g), 0.5);
  for (double v : z.values()) CHECK(v == 0.0);
  CHECK(detail::riesz_self_weight(1, 0.25, 0.5) == doctest::Approx(2 * std::pow(0.125, 0.5) / 0.5));
}

TEST_CASE("maximal is dominated by the Riesz potential") {
  const GridSpec g = default_grid(1);
  OperatorSpec s;
  s.alpha = 0.5;
  const double v1 = std::pow(2.0, 0.5 - 1);
  for (const auto& m : random_family(g, 20, 17)) {
    const auto mf = maximal(m.f, s);
    const auto rf = riesz_potential(m.f, 0.5);
    for (std::size_t k = 0; k < mf.size(); ++k) CHECK(mf[k] <= v1 * rf[k] * 1.01);
  }
}

TEST_CASE("uncentered versus centered") {
  const GridSpec g = default_grid(1);
  for (double alpha : {0.0, 0.25, 0.5}) {
    OperatorSpec c, u;
    c.alpha = u.alpha = alpha;
    u.centered = false;
    const double bound = std::pow(2.0, 1 - alpha);
    for (const auto& m : random_family(g, 5, 23)) {
      const auto mc = maximal(m.f, c);
      const auto mu = maximal(m.f, u);
      for (std::size_t k = 0; k < mc.size(); ++k) {
        CHECK(mu[k] >= mc[k] * (1 - 1e-12));
        CHECK(mu[k] <= bound * mc[k] * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("lower bound on indicators") {
  const GridSpec g = default_grid(1);
  for (double r0 : {0.25, 1.0, 4.0}) {
    const auto chi = sample_function(g, indicator(0, r0));
    for (double alpha : {0.0, 0.5}) {
      OperatorSpec s;
      s.alpha = alpha;
      const auto m = maximal(chi, s);
      for (std::size_t k = 0; k < m.size(); ++k)
        if (chi[k] > 0) CHECK(m[k] >= std::pow(r0, alpha) / std::pow(2.0, 1 - alpha) * 0.98);
    }
  }
}

TEST_CASE("monotone and positively homogeneous") {
  for (const GridSpec& g : {GridSpec{1, 1.0 / 32, 4}, GridSpec{2, 0.25, 2}}) {
    const auto f = random_values(g, 3, 0.5);
    std::vector<double> bigger = f.values();
    for (std::size_t k = 0; k < bigger.size(); k += 3) bigger[k] += 0.7;
    const SampledFunction gfun(g, bigger);
    for (bool centered : {true, false}) {
      OperatorSpec s;
      s.alpha = 0.25;
      s.centered = centered;
      const auto mf = maximal(f, s);
      const auto mg = maximal(gfun, s);
      const auto m3 = maximal(f.scaled(3.0), s);
      for (std::size_t k = 0; k < mf.size(); ++k) {
        CHECK(mf[k] <= mg[k] * (1 + 1e-13));
        CHECK(m3[k] == doctest::Approx(3 * mf[k]).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("fast kernels agree with the serial reference") {
  SUBCASE("1-D") {
    const GridSpec g{1, 1.0 / 16, 4};
    const auto f = random_values(g, 41, 0.6);
    for (double alpha : {0.0, 0.3}) {
      for (bool centered : {true, false}) {
        OperatorSpec s;
        s.alpha = alpha;
        s.centered = centered;
        CHECK(max_rel_diff(maximal(f, s), reference::maximal(f, s)) <= 1e-12);
      }
      if (alpha > 0) CHECK(max_rel_diff(riesz_potential(f, alpha), reference::riesz_potential(f, alpha)) <= 1e-12);
    }
  }
  SUBCASE("2-D") {
    const GridSpec g{2, 0.25, 1};
    const auto f = random_values(g, 43, 0.5);
    for (bool centered : {true, false}) {
      OperatorSpec s;
      s.alpha = 0.5;
      s.centered = centered;
      CHECK(max_rel_diff(maximal(f, s), reference::maximal(f, s)) <= 1e-12);
    }
    CHECK(max_rel_diff(riesz_potential(f, 1.2), reference::riesz_potential(f, 1.2)) <= 1e-12);
  }
}

TEST_CASE("disk rows") {
  CHECK(detail::disk_half_width(4.0, 0) == 2);
  CHECK(detail::disk_half_width(4.0, 2) == 0);
  CHECK(detail::disk_half_width(4.0, 3) == -1);
  CHECK(detail::disk_half_width(5.0, 1) == 2);
}

TEST_CASE("2-D centered maximal on a disk indicator") {
  const GridSpec g{2, 1.0 / 16, 4};
  const json disk = {{"type", "ball_indicator"}, {"center", {0.0, 0.0}}, {"radius", 1.0}};
  const auto chi = sample_function(g, disk);
  const auto m = maximal(chi, OperatorSpec{});
  for (std::size_t k = 0; k < m.size(); ++k)
    if (chi[k] > 0) CHECK(m[k] == doctest::Approx(1.0).epsilon(1e-12));
}
