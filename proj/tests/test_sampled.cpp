#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "olab/errors.hpp"
#include "olab/numeric.hpp"
#include "olab/sampled.hpp"
#include "oracles.hpp"

using namespace olab;
using nlohmann::json;

namespace {

json indicator(double c, double r) { return {{"type", "ball_indicator"}, {"center", {c}}, {"radius", r}}; }

// chi_[0,1] + 2 chi_(1,2] on a 1-D grid.
SampledFunction step_function(const GridSpec& g) {
  std::vector<double> v(g.size(), 0.0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double x = g.coord(static_cast<long>(k));
    if (x > 0 && x < 1) v[k] = 1;
    if (x > 1 && x < 2) v[k] = 2;
  }
  return SampledFunction(g, v);
}

}  // namespace

TEST_CASE("ball measure") {
  CHECK(ball_measure(1, 1) == 2.0);
  CHECK(ball_measure(2, 1) == doctest::Approx(std::numbers::pi));
  CHECK(ball_measure(2, 3) == doctest::Approx(9 * std::numbers::pi));
  CHECK_THROWS_AS(ball_measure(1, 0), DomainError);
  CHECK_THROWS_AS(ball_measure(3, 1), DomainError);
}

TEST_CASE("grid layout") {
  const GridSpec g = default_grid(1);
  CHECK(g.size() == 2048);
  CHECK(g.coord(0) == doctest::Approx(-16 + 1.0 / 128));
  CHECK(g.nearest_index(0.0) == 1024);
  CHECK(default_grid(2).size() == 256u * 256u);
  CHECK_THROWS_AS((GridSpec{1, 0.3, 1.0}.validate()), ConfigError);
  CHECK_THROWS_AS((GridSpec{3, 0.25, 1.0}.validate()), ConfigError);
}

TEST_CASE("lattice ball measure tracks the true measure") {
  const GridSpec g = default_grid(1);
  CHECK(lattice_ball_measure(g, Ball{{0, 0}, 1.0}) == 2.0);
  CHECK(lattice_ball_measure(g, Ball{{0.3, 0}, 100.0}) == doctest::Approx(200).epsilon(1e-3));
  const GridSpec g2{2, 1.0 / 64, 4};
  CHECK(lattice_ball_measure(g2, Ball{{0, 0}, 1.0}) == doctest::Approx(std::numbers::pi).epsilon(0.02));
}

TEST_CASE("sampling the formula family") {
  const GridSpec g{1, 1.0 / 64, 4};
  SUBCASE("indicator has 128 unit cells") {
    const auto f = sample_function(g, indicator(0, 1));
    std::size_t ones = 0;
    for (double v : f.values()) ones += v == 1.0;
    CHECK(ones == 128);
    CHECK(integrate(f) == 2.0);
  }
  SUBCASE("power decay at the first cell center") {
    const auto f = sample_function(g, {{"type", "power_decay"}, {"gamma", 0.5}, {"radius", 1}});
    CHECK(f[static_cast<std::size_t>(g.nearest_index(1.0 / 128))] == doctest::Approx(std::sqrt(128.0)));
  }
  SUBCASE("gaussian peaks at one") {
    const GridSpec odd{1, 0.5, 2};
    const auto f = sample_function(odd, {{"type", "gaussian"}, {"scale", 1}});
    CHECK(f.max_value() == doctest::Approx(std::exp(-0.0625)));
  }
  SUBCASE("sums add") {
    const json sum = {{"type", "sum"}, {"terms", {indicator(0, 1), indicator(0.5, 1)}}};
    CHECK(sample_function(g, sum).max_value() == 2.0);
  }
  SUBCASE("unsupported descriptors") {
    CHECK_THROWS_AS(sample_function(g, {{"type", "sinc"}}), ConfigError);
    CHECK_THROWS_AS(sample_function(g, {{"type", "power_decay"}, {"gamma", 1.5}, {"radius", 1}}), ConfigError);
    CHECK_THROWS_AS(sample_function(g, {{"type", "ball_indicator"}, {"center", {0}}, {"radius", 1}, {"amplitude", -1}}),
                    ConfigError);
    CHECK_THROWS_AS(SampledFunction(g, std::vector<double>(g.size(), -1.0)), DomainError);
  }
}

TEST_CASE("origin cells use the cell average") {
  // No cell center sits on the origin, so move the singularity onto one.
  const GridSpec g{2, 1.0 / 16, 2};
  const double c = g.coord(g.nearest_index(0.0));
  const json f = {{"type", "power_decay"}, {"gamma", 1.0}, {"radius", 1}, {"center", {c, c}}};
  const auto s = sample_function(g, f);
  CHECK(std::isfinite(s.max_value()));
  // Equal-area disk average of |y|^{-1}: 2 / rho with rho = h / sqrt(pi).
  CHECK(s.max_value() == doctest::Approx(2.0 * std::sqrt(std::numbers::pi) / g.h));
}

TEST_CASE("integrate") {
  const GridSpec g = default_grid(1);
  const auto chi = sample_function(g, indicator(0, 1));
  CHECK(integrate(chi) == 2.0);
  CHECK(integrate(chi, Ball{{0, 0}, 0.5}) == 1.0);

  const GridSpec fine{1, 1.0 / 256, 2};
  const auto pd = sample_function(fine, {{"type", "power_decay"}, {"gamma", 0.5}, {"radius", 1}});
  CHECK(integrate(pd) == doctest::Approx(oracle::kPowerDecayIntegral).epsilon(0.03));

  std::vector<double> v(g.size(), 0.0);
  v[3] = kInfinity;
  CHECK(is_infinite(integrate(SampledFunction(g, v))));
}

TEST_CASE("integrate is additive over disjoint pieces") {
  const GridSpec g = default_grid(1);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> v(g.size());
  for (double& x : v) x = u(rng);
  const SampledFunction f(g, v);
  const double whole = integrate(f, Ball{{0, 0}, 2});
  const double left = integrate(f, Ball{{-1, 0}, 1});
  const double right = integrate(f, Ball{{1, 0}, 1});
  // The ball boundaries fall between centers, so the split is exact.
  CHECK(left + right == doctest::Approx(whole).epsilon(1e-12));
}

TEST_CASE("distribution function") {
  const auto f = step_function(default_grid(1));
  CHECK(distribution_function(f, 1.5) == 1.0);
  CHECK(distribution_function(f, 0.5) == 2.0);
  CHECK(distribution_function(f, 2.0) == 0.0);
  double prev = kInfinity;
  for (double t = 0; t < 3; t += 0.125) {
    const double d = distribution_function(f, t);
    CHECK(d <= prev);
    prev = d;
  }
  CHECK(distribution_function(f, 0.0) == 2.0);
}
