#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "olab/numeric.hpp"
#include "olab/report.hpp"

namespace olab {

class ConjugateTable;

/// Convex, left-continuous Phi: [0, inf) -> [0, inf] with Phi(0) = 0 and
/// Phi(t) -> inf. Values are immutable and cheap to copy.
class YoungFunction {
 public:
  enum class Kind { power, power_log, exp_minus_one, linear_capped, composed_power, tabulated };

  /// t^p, p >= 1.
  static YoungFunction power(double p);
  /// t^p * log(e + t)^a, p >= 1, a >= 0.
  static YoungFunction power_log(double p, double a);
  /// e^t - 1.
  static YoungFunction exp_minus_one();
  /// 0 on [0, 1], inf beyond; the L^inf gauge.
  static YoungFunction linear_capped();

  Kind kind() const noexcept;

  /// Phi(t) for t >= 0 (unchecked; see eval_young for the checked form).
  double operator()(double t) const;

  /// Generalized inverse inf{r >= 0 : Phi(r) > s}.
  double inverse(double s) const;

  /// p when Phi(c t) = c^p Phi(t) for every c, t > 0.
  std::optional<double> homogeneity() const noexcept;

  /// True when Phi(t)/t stays bounded, so the conjugate is infinite past a
  /// finite slope.
  bool asymptotically_linear() const noexcept;

  nlohmann::json to_json() const;
  std::string describe() const;

  // Parameters of the closed-form kinds; zero where not applicable.
  double exponent() const noexcept;
  double log_exponent() const noexcept;
  /// Base function of a composed-power value; throws for other kinds.
  const YoungFunction& base() const;
  double beta() const noexcept;

 private:
  struct Power {
    double p;
  };
  struct PowerLog {
    double p;
    double a;
  };
  struct ExpMinusOne {};
  struct LinearCapped {};
  struct Composed {
    std::shared_ptr<const YoungFunction> base;
    double beta;
  };
  struct Tabulated {
    std::shared_ptr<const ConjugateTable> table;
  };
  using Rep = std::variant<Power, PowerLog, ExpMinusOne, LinearCapped, Composed, Tabulated>;

  explicit YoungFunction(Rep rep) : rep_(std::move(rep)) {}

  friend YoungFunction compose_power(const YoungFunction& phi, double beta);
  friend YoungFunction conjugate_young(const YoungFunction& phi);

  Rep rep_;
};

/// Phi(t); throws DomainError for negative or NaN t.
double eval_young(const YoungFunction& phi, double t);

/// Phi^{-1}(s) = inf{r >= 0 : Phi(r) > s}; throws DomainError for s < 0.
double invert_young(const YoungFunction& phi, double s);

/// Complementary function sup_s (r s - Phi(s)), tabulated on a log grid.
YoungFunction conjugate_young(const YoungFunction& phi);

/// Psi(t) = Phi(t^(1/beta)); throws ParameterError unless 0 < beta < 1.
YoungFunction compose_power(const YoungFunction& phi, double beta);

enum class GrowthClass { delta2, nabla2, delta_prime };

std::string_view to_string(GrowthClass c) noexcept;

/// Empirical best constant of the Delta_2, nabla_2 or Delta' condition on
/// three nested windows of `range`, each twice as wide (per end) as the
/// previous one, with the verdict from assess_doublings.
ConditionReport classify_growth(const YoungFunction& phi, GrowthClass cls, const LogGrid& range);

/// Numerical check of the Young-function axioms on a log grid: Phi(0) = 0,
/// monotonicity, midpoint convexity (relative slack 1e-9) and that infinite
/// values persist. Returns a list of violations; empty when all hold.
std::vector<std::string> check_young_invariants(const YoungFunction& phi, const LogGrid& grid);

}  // namespace olab
