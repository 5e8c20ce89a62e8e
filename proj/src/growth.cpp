#include "olab/growth.hpp"

#include <cmath>
#include <numbers>

#include "olab/errors.hpp"

namespace olab {

GrowthFunction GrowthFunction::power(double e) {
  if (!std::isfinite(e)) throw ParameterError("growth exponent must be finite");
  return GrowthFunction(Power{e});
}

GrowthFunction GrowthFunction::power_log(double e, double a) {
  if (!std::isfinite(e) || !std::isfinite(a)) throw ParameterError("growth exponents must be finite");
  return GrowthFunction(PowerLog{e, a});
}

GrowthFunction GrowthFunction::lambda_flavored(const YoungFunction& phi, double lambda, int n) {
  if (!std::isfinite(lambda)) throw ParameterError("lambda must be finite");
  if (n != 1 && n != 2) throw ParameterError("dimension must be 1 or 2");
  return GrowthFunction(Lambda{phi, lambda, n});
}

GrowthFunction GrowthFunction::power_of(const GrowthFunction& base, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("growth power must be positive");
  return GrowthFunction(PowerOf{std::make_shared<const GrowthFunction>(base), beta});
}

double GrowthFunction::operator()(double t) const {
  if (const auto* k = std::get_if<Power>(&rep_)) return std::pow(t, k->e);
  if (const auto* k = std::get_if<PowerLog>(&rep_)) {
    return std::pow(t, k->e) * std::pow(std::log(std::numbers::e + t), k->a);
  }
  if (const auto* k = std::get_if<Lambda>(&rep_)) {
    return k->phi.inverse(std::pow(t, -k->n)) / k->phi.inverse(std::pow(t, -k->lambda));
  }
  const auto& k = std::get<PowerOf>(rep_);
  return std::pow((*k.base)(t), k.beta);
}

std::optional<double> GrowthFunction::lambda() const noexcept {
  if (const auto* k = std::get_if<Lambda>(&rep_)) return k->lambda;
  return std::nullopt;
}

std::optional<double> GrowthFunction::power_exponent() const noexcept {
  if (const auto* k = std::get_if<Power>(&rep_)) return k->e;
  if (const auto* k = std::get_if<PowerOf>(&rep_)) {
    if (auto e = k->base->power_exponent()) return *e * k->beta;
  }
  return std::nullopt;
}

nlohmann::json GrowthFunction::to_json() const {
  using nlohmann::json;
  if (const auto* k = std::get_if<Power>(&rep_)) return json{{"kind", "power"}, {"exponent", k->e}};
  if (const auto* k = std::get_if<PowerLog>(&rep_)) {
    return json{{"kind", "power_log"}, {"exponent", k->e}, {"log_exponent", k->a}};
  }
  if (const auto* k = std::get_if<Lambda>(&rep_)) {
    return json{{"kind", "lambda_flavored"}, {"lambda", k->lambda}, {"young", k->phi.to_json()}, {"dim", k->n}};
  }
  const auto& k = std::get<PowerOf>(rep_);
  return json{{"kind", "power_of"}, {"base", k.base->to_json()}, {"beta", k.beta}};
}

}  // namespace olab
