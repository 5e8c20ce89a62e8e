#pragma once

#include <memory>
#include <optional>
#include <variant>

#include "json.hpp"
#include "olab/young.hpp"

namespace olab {

/// Radial growth function phi: (0, inf) -> (0, inf).
class GrowthFunction {
 public:
  /// t^e.
  static GrowthFunction power(double e);
  /// t^e * log(e + t)^a.
  static GrowthFunction power_log(double e, double a);
  /// Phi^{-1}(t^-n) / Phi^{-1}(t^-lambda).
  static GrowthFunction lambda_flavored(const YoungFunction& phi, double lambda, int n);
  /// base(t)^beta.
  static GrowthFunction power_of(const GrowthFunction& base, double beta);

  double operator()(double t) const;

  /// Lambda when this is the lambda-flavored function of some Phi.
  std::optional<double> lambda() const noexcept;
  /// Pure power exponent e when phi(t) = t^e.
  std::optional<double> power_exponent() const noexcept;

  nlohmann::json to_json() const;

 private:
  struct Power {
    double e;
  };
  struct PowerLog {
    double e;
    double a;
  };
  struct Lambda {
    YoungFunction phi;
    double lambda;
    int n;
  };
  struct PowerOf {
    std::shared_ptr<const GrowthFunction> base;
    double beta;
  };
  using Rep = std::variant<Power, PowerLog, Lambda, PowerOf>;

  explicit GrowthFunction(Rep rep) : rep_(std::move(rep)) {}

  Rep rep_;
};

}  // namespace olab
