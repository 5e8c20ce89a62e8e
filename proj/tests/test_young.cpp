#include <cmath>
#include <vector>

#include "doctest.h"
#include "olab/errors.hpp"
#include "olab/young.hpp"

using namespace olab;

namespace {

std::vector<double> log_points(double lo, double hi, int count) {
  std::vector<double> out;
  for (int k = 0; k < count; ++k) out.push_back(lo * std::pow(hi / lo, k / double(count - 1)));
  return out;
}

}  // namespace

TEST_CASE("closed-form evaluation") {
  CHECK(eval_young(YoungFunction::power(2), 3.0) == 9.0);
  CHECK(eval_young(YoungFunction::linear_capped(), 0.5) == 0.0);
  CHECK(is_infinite(eval_young(YoungFunction::linear_capped(), 1.5)));
  CHECK(eval_young(YoungFunction::linear_capped(), 1.0) == 0.0);
  CHECK(eval_young(compose_power(YoungFunction::power(2), 0.5), 3.0) == doctest::Approx(81.0).epsilon(1e-14));
  CHECK(eval_young(YoungFunction::exp_minus_one(), 1.0) == doctest::Approx(std::expm1(1.0)));
  CHECK(eval_young(YoungFunction::power_log(2, 1), 0.0) == 0.0);
  CHECK_THROWS_AS(eval_young(YoungFunction::power(2), -1.0), DomainError);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(YoungFunction::power(0.5), ParameterError);
  CHECK_THROWS_AS(YoungFunction::power_log(2, -1), ParameterError);
  CHECK_THROWS_AS(compose_power(YoungFunction::power(2), 1.0), ParameterError);
  CHECK_THROWS_AS(compose_power(YoungFunction::power(2), 0.0), ParameterError);
}

TEST_CASE("generalized inverse") {
  CHECK(invert_young(YoungFunction::power(3), 8.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(invert_young(YoungFunction::linear_capped(), 100.0) == 1.0);
  CHECK(invert_young(YoungFunction::linear_capped(), 0.0) == 1.0);
  CHECK(is_infinite(invert_young(YoungFunction::power(2), kInfinity)));

  const YoungFunction pl = YoungFunction::power_log(2, 1);
  const double r = invert_young(pl, 5.0);
  CHECK(r * r * std::log(std::exp(1.0) + r) == doctest::Approx(5.0).epsilon(1e-9));

  const YoungFunction psi = compose_power(YoungFunction::power(2), 0.5);
  CHECK(invert_young(psi, 16.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(invert_young(psi, 16.0) == doctest::Approx(std::sqrt(invert_young(YoungFunction::power(2), 16.0))));
}

TEST_CASE("inverse consistency") {
  for (const YoungFunction& phi : {YoungFunction::power(1.5), YoungFunction::power_log(2, 1),
                                   YoungFunction::exp_minus_one(), compose_power(YoungFunction::power_log(1, 2), 0.4)}) {
    for (double s : log_points(1e-6, 1e6, 41)) {
      const double r = invert_young(phi, s);
      CHECK(eval_young(phi, r) <= s * (1 + 1e-12));
      CHECK(eval_young(phi, (1 + 1e-9) * r) >= s);
    }
  }
}

TEST_CASE("scaling properties") {
  for (const YoungFunction& phi : {YoungFunction::power(2), YoungFunction::power_log(1, 1),
                                   YoungFunction::exp_minus_one(), YoungFunction::linear_capped()}) {
    for (double t : log_points(1e-3, 1e2, 23)) {
      const double v = eval_young(phi, t);
      CHECK(eval_young(phi, 0.0) == 0.0);
      for (double a : {0.1, 0.5, 0.9}) CHECK(eval_young(phi, a * t) <= a * v * (1 + 1e-12));
      for (double a : {1.5, 2.0, 10.0}) CHECK(eval_young(phi, a * t) >= a * v * (1 - 1e-12));
    }
  }
}

TEST_CASE("composed power inverts pointwise") {
  const YoungFunction phi = YoungFunction::power_log(2, 1);
  const YoungFunction psi = compose_power(phi, 0.5);
  for (double t : log_points(1e-3, 1e3, 17)) CHECK(eval_young(psi, std::pow(t, 0.5)) == doctest::Approx(eval_young(phi, t)));
  // t^p with beta = p/q gives t^q.
  const YoungFunction t4 = compose_power(YoungFunction::power(2), 0.5);
  CHECK(eval_young(t4, 1.7) == doctest::Approx(std::pow(1.7, 4)));
}

TEST_CASE("axioms hold for every kind") {
  const LogGrid grid{1e-4, 1e4, 8};
  for (const YoungFunction& phi :
       {YoungFunction::power(1), YoungFunction::power(3), YoungFunction::power_log(2, 1), YoungFunction::exp_minus_one(),
        YoungFunction::linear_capped(), compose_power(YoungFunction::power(2), 0.5),
        conjugate_young(YoungFunction::power(3))}) {
    const auto problems = check_young_invariants(phi, grid);
    CHECK_MESSAGE(problems.empty(), phi.describe());
  }
}

TEST_CASE("conjugate of the identity is the L-infinity gauge") {
  const YoungFunction c = conjugate_young(YoungFunction::power(1));
  CHECK(eval_young(c, 0.5) == doctest::Approx(0.0));
  CHECK(eval_young(c, 1.0) == doctest::Approx(0.0));
  CHECK(is_infinite(eval_young(c, 1.01)));
}

TEST_CASE("quadratic over two is self-conjugate within two percent") {
  // (c Phi)~(r) = c Phi~(r / c), so the conjugate of t^2/2 is read off the
  // tabulated conjugate of t^2 at 2r.
  const YoungFunction c = conjugate_young(YoungFunction::power(2));
  for (double r : log_points(1e-2, 1e2, 33)) {
    CHECK(eval_young(c, r) == doctest::Approx(r * r / 4).epsilon(0.02));
    CHECK(0.5 * eval_young(c, 2 * r) == doctest::Approx(r * r / 2).epsilon(0.02));
  }
}

TEST_CASE("conjugate pairing") {
  for (const YoungFunction& phi : {YoungFunction::power(1.5), YoungFunction::power(3), YoungFunction::power_log(2, 1)}) {
    const YoungFunction c = conjugate_young(phi);
    for (double r : {0.1, 1.0, 10.0}) {
      const double prod = invert_young(phi, r) * invert_young(c, r);
      CHECK(prod >= r * (1 - 1e-6));
      CHECK(prod <= 2 * r * (1 + 1e-6));
    }
  }
}

TEST_CASE("growth classes") {
  const LogGrid range{0x1p-8, 0x1p8, 8};
  SUBCASE("powers are Delta-prime with constant one") {
    const auto rep = classify_growth(YoungFunction::power(2.5), GrowthClass::delta_prime, range);
    CHECK(rep.final_constant() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.verdict == Verdict::holds_stable);
  }
  SUBCASE("t^2 is in nabla_2 with C = 2") {
    const auto rep = classify_growth(YoungFunction::power(2), GrowthClass::nabla2, range);
    CHECK(rep.final_constant() <= 2.0);
    CHECK(rep.verdict == Verdict::holds_stable);
  }
  SUBCASE("t is not in nabla_2") {
    const auto rep = classify_growth(YoungFunction::power(1), GrowthClass::nabla2, range);
    CHECK(is_infinite(rep.final_constant()));
    CHECK(rep.verdict == Verdict::diverges);
  }
  SUBCASE("exponential is not Delta_2") {
    const YoungFunction e = YoungFunction::exp_minus_one();
    for (double r : {1.0, 2.0, 4.0}) CHECK(e(4 * r) / e(2 * r) > e(2 * r) / e(r));
    CHECK(classify_growth(e, GrowthClass::delta2, LogGrid{0x1p-4, 0x1p4, 8}).verdict == Verdict::diverges);
  }
  SUBCASE("Delta-prime constant bounds products of inverses") {
    const YoungFunction phi = YoungFunction::power_log(2, 1);
    const auto rep = classify_growth(phi, GrowthClass::delta_prime, range);
    const double c = rep.final_constant();
    REQUIRE(std::isfinite(c));
    for (double u : log_points(1e-3, 1e3, 13))
      for (double v : log_points(1e-3, 1e3, 13))
        CHECK(invert_young(phi, u) * invert_young(phi, v) <= invert_young(phi, c * u * v) * (1 + 1e-9));
  }
}
