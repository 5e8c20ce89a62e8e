#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "olab/characterize.hpp"
#include "olab/errors.hpp"
#include "oracles.hpp"

using namespace olab;

namespace {

AdamsSetup power_setup(double lambda, double q) {
  const YoungFunction t2 = YoungFunction::power(2);
  return AdamsSetup{t2, growth_from_lambda(t2, lambda), 0.25, 2.0 / q, 1};
}

void check_nondecreasing(const ConditionReport& rep) {
  for (std::size_t i = 1; i < rep.steps.size(); ++i)
    CHECK(rep.steps[i].constant >= rep.steps[i - 1].constant * (1 - 1e-12));
}

}  // namespace

TEST_CASE("verdict rule") {
  const double stable[] = {1, 1.2, 1.3, 1.31};
  const double growing[] = {1, 1.5, 2.25, 3.4};
  const double slowing[] = {1, 1.5, 1.6, 1.75};
  const double blowup[] = {1, 2, kInfinity};
  CHECK(assess_doublings(stable) == Verdict::holds_stable);
  CHECK(assess_doublings(growing) == Verdict::diverges);
  CHECK(assess_doublings(slowing) == Verdict::inconclusive);
  CHECK(assess_doublings(blowup) == Verdict::diverges);
}

TEST_CASE("lambda-flavored growth functions") {
  const YoungFunction t2 = YoungFunction::power(2);
  CHECK(growth_from_lambda(t2, 0.5)(4.0) == doctest::Approx(oracle::lambda_power_growth(4, 0.5, 1, 2)));
  CHECK(growth_from_lambda(t2, 0.5)(4.0) == doctest::Approx(std::pow(4.0, -0.25)));
  CHECK(growth_from_lambda(t2, 1.0)(7.0) == doctest::Approx(1.0));
  const YoungFunction pl = YoungFunction::power_log(2, 1);
  CHECK(growth_from_lambda(pl, 0.0)(0.3) ==
        doctest::Approx(invert_young(pl, 1 / 0.3) / invert_young(pl, 1.0)));
}

TEST_CASE("setup validation and derived functions") {
  AdamsSetup s = power_setup(0, 4);
  CHECK_NOTHROW(s.validate());
  CHECK(eval_young(s.psi(), 1.5) == doctest::Approx(std::pow(1.5, 4)));
  CHECK(s.eta()(16.0) == doctest::Approx(std::pow(16.0, -0.25)));
  s.alpha = 1.0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.alpha = 0.25;
  s.beta = 1.0;
  CHECK_THROWS_AS(s.validate(), ParameterError);
}

TEST_CASE("class membership") {
  const YoungFunction t2 = YoungFunction::power(2);
  const LogGrid range{0x1p-10, 0x1p10, 32};
  CHECK(check_membership(GrowthFunction::power(-0.5), t2, MembershipClass::g_phi, range).verdict ==
        Verdict::holds_stable);
  CHECK(check_membership(GrowthFunction::power(0.5), t2, MembershipClass::g_phi, range).verdict == Verdict::diverges);
  CHECK(check_membership(GrowthFunction::power(-0.5), t2, MembershipClass::omega, range).verdict ==
        Verdict::holds_stable);
  CHECK(check_membership(GrowthFunction::power(-1.0), t2, MembershipClass::omega, range).verdict == Verdict::diverges);
}

TEST_CASE("Adams exponent criterion") {
  const auto balanced = check_condition(ConditionKind::adams_necessary, power_setup(0, 4));
  CHECK(balanced.verdict == Verdict::holds_stable);
  for (const auto& s : balanced.steps) CHECK(s.constant == doctest::Approx(oracle::kAdamsNecessaryBalanced).epsilon(1e-12));
  for (double q : {3.0, 6.0}) {
    const auto rep = check_condition(ConditionKind::adams_necessary, power_setup(0, q));
    CHECK(rep.verdict == Verdict::diverges);
    check_nondecreasing(rep);
  }
  // Balance 1/p - 1/q = alpha / (n - lambda) with lambda = 1/2 gives q = -4:
  // no admissible q, so every beta diverges.
  for (double q : {3.0, 4.0, 6.0})
    CHECK(check_condition(ConditionKind::adams_necessary, power_setup(0.5, q)).verdict == Verdict::diverges);
}

TEST_CASE("closed-form constants") {
  const AdamsSetup s = power_setup(0, 4);
  const auto suff = check_condition(ConditionKind::adams_sufficient, s);
  CHECK(suff.final_constant() == doctest::Approx(oracle::kAdamsSufficientBalanced).epsilon(1e-9));
  CHECK(suff.verdict == Verdict::holds_stable);

  const auto reg = check_condition(ConditionKind::riesz_regularity, s);
  for (const auto& step : reg.steps)
    CHECK(step.constant == doctest::Approx(oracle::riesz_regularity(step.level)).epsilon(1e-4));
  CHECK(reg.final_constant() == doctest::Approx(oracle::kRieszRegularityLimit).epsilon(0.02));
  CHECK(reg.verdict == Verdict::holds_stable);

  const auto sup0 = check_condition(ConditionKind::supremal_maximal, s);
  CHECK(sup0.final_constant() == doctest::Approx(oracle::kSupremalLambdaZero).epsilon(1e-9));
  CHECK(sup0.verdict == Verdict::holds_stable);

  const auto sup_half = check_condition(ConditionKind::supremal_maximal, power_setup(0.5, 4));
  CHECK(sup_half.verdict == Verdict::diverges);
  for (std::size_t i = 1; i < sup_half.steps.size(); ++i) {
    const double ratio = sup_half.steps[i].constant / sup_half.steps[i - 1].constant;
    // C(R) = R^{1/2}: the inner sup contributes R^{1/4}, the window [1/R, R] the rest.
    const double expected = std::pow(sup_half.steps[i].level / sup_half.steps[i - 1].level, 0.5);
    CHECK(ratio == doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("lambda conditions follow the power-case thresholds") {
  // lambda-sufficient holds iff lambda < n - alpha p = 1/2.
  for (double lambda : {0.0, 0.25, 0.4}) {
    CHECK(check_condition(ConditionKind::lambda_sufficient, power_setup(lambda, 4)).verdict == Verdict::holds_stable);
  }
  for (double lambda : {0.6, 0.75}) {
    CHECK(check_condition(ConditionKind::lambda_sufficient, power_setup(lambda, 4)).verdict == Verdict::diverges);
  }
  CHECK(check_condition(ConditionKind::lambda_necessary, power_setup(0, 4)).verdict == Verdict::holds_stable);
  CHECK(check_condition(ConditionKind::lambda_necessary, power_setup(0, 6)).verdict == Verdict::diverges);
}

TEST_CASE("reports are monotone in the truncation") {
  for (ConditionKind k : {ConditionKind::supremal_maximal, ConditionKind::adams_sufficient, ConditionKind::adams_necessary,
                          ConditionKind::lambda_sufficient, ConditionKind::lambda_necessary,
                          ConditionKind::riesz_sufficient, ConditionKind::riesz_regularity}) {
    for (double lambda : {0.0, 0.5}) {
      for (double q : {3.0, 4.0, 6.0}) check_nondecreasing(check_condition(k, power_setup(lambda, q)));
    }
  }
}

TEST_CASE("condition names round-trip") {
  for (ConditionKind k : {ConditionKind::supremal_maximal, ConditionKind::adams_sufficient, ConditionKind::adams_necessary,
                          ConditionKind::lambda_sufficient, ConditionKind::lambda_necessary,
                          ConditionKind::riesz_sufficient, ConditionKind::riesz_regularity}) {
    CHECK(parse_condition(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_condition("adams"), ConfigError);
}

TEST_CASE("test families") {
  const GridSpec g = default_grid(1);
  CHECK(indicator_family(g).size() == 9);
  CHECK(power_decay_family(g).size() == 4);
  const auto a = random_family(g, 6, 99);
  const auto b = random_family(g, 6, 99);
  REQUIRE(a.size() == 6);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].f.values() == b[i].f.values());
  CHECK(random_family(g, 6, 100)[0].f.values() != a[0].f.values());
}

TEST_CASE("operator norm estimates") {
  const GridSpec g = default_grid(1);
  std::vector<FamilyMember> fam = indicator_family(g);
  fam.push_back({"zero", SampledFunction::zeros(g)});
  const auto rows = estimate_operator_norm(power_setup(0, 4), OperatorKind::fractional_maximal, Target::strong, fam);
  REQUIRE(rows.size() == fam.size());
  CHECK(rows.back().skipped);
  CHECK(!rows.back().notice.empty());
  double lo = kInfinity, hi = 0;
  for (const auto& r : rows)
    if (!r.skipped) lo = std::min(lo, r.ratio), hi = std::max(hi, r.ratio);
  CHECK(hi / lo <= 4.0);
}

TEST_CASE("necessity witness") {
  const GridSpec g = default_grid(1);
  std::vector<double> t0;
  for (int k = -4; k <= 4; ++k) t0.push_back(std::ldexp(1.0, k));
  const auto bal = necessity_witness(power_setup(0, 4), t0, g);
  REQUIRE(bal.rows.size() == t0.size());
  for (const auto& r : bal.rows) {
    CHECK(r.lower_bound == doctest::Approx(1.0));
    CHECK(r.measured >= r.lower_bound / bal.k * (1 - 1e-12));
  }
  // q = 6: lower bound t0^{alpha} varphi(t0)^{1 - beta} = t0^{-1/12}.
  const auto q6 = necessity_witness(power_setup(0, 6), t0, g);
  for (const auto& r : q6.rows) CHECK(r.lower_bound == doctest::Approx(std::pow(r.t0, -1.0 / 12)));
  const double too_big[] = {32.0};
  CHECK_THROWS_AS(necessity_witness(power_setup(0, 4), too_big, g), UnrepresentableBall);
  const double too_small[] = {g.h / 4};
  CHECK_THROWS_AS(necessity_witness(power_setup(0, 4), too_small, g), UnrepresentableBall);
}

TEST_CASE("pointwise Adams inequality") {
  const GridSpec g = default_grid(1);
  const AdamsSetup s = power_setup(0, 4);
  const auto chi = sample_function(g, {{"type", "ball_indicator"}, {"center", {0}}, {"radius", 1}});
  const auto rep = check_pointwise_inequalities(s, chi);
  CHECK(std::isfinite(rep.max_ratio));
  CHECK(rep.points > 0);
  double worst = rep.max_ratio;
  for (const auto& m : random_family(g, 10, 5)) worst = std::max(worst, check_pointwise_inequalities(s, m.f).max_ratio);
  CHECK(std::isfinite(worst));
  const auto zero = check_pointwise_inequalities(s, SampledFunction::zeros(g));
  CHECK(zero.points == 0);
  CHECK(!zero.witness);
}
