#include "olab/config.hpp"

#include <fstream>
#include <sstream>

#include "olab/errors.hpp"

namespace olab::config {

namespace {

template <class T>
T field(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("field '") + key + "' has the wrong type");
  }
}

double number(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

}  // namespace

nlohmann::json load(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  std::string body;
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    body = text;
  } else {
    std::ifstream in(text);
    if (!in) throw ConfigError("cannot read config file '" + text + "'");
    std::ostringstream os;
    os << in.rdbuf();
    body = os.str();
  }
  try {
    return nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
}

YoungFunction young(const nlohmann::json& j) {
  const std::string kind = field<std::string>(j, "kind");
  if (kind == "power") return YoungFunction::power(field<double>(j, "p"));
  if (kind == "power_log") return YoungFunction::power_log(field<double>(j, "p"), field<double>(j, "a"));
  if (kind == "exp_minus_one") return YoungFunction::exp_minus_one();
  if (kind == "linear_capped") return YoungFunction::linear_capped();
  if (kind == "composed_power") return compose_power(young(field<nlohmann::json>(j, "base")), field<double>(j, "beta"));
  if (kind == "conjugate") return conjugate_young(young(field<nlohmann::json>(j, "of")));
  throw ConfigError("unknown Young function kind '" + kind + "'");
}

GrowthFunction growth(const nlohmann::json& j, const YoungFunction& phi, int n) {
  const std::string kind = field<std::string>(j, "kind");
  if (kind == "power") return GrowthFunction::power(field<double>(j, "exponent"));
  if (kind == "power_log") {
    return GrowthFunction::power_log(field<double>(j, "exponent"), field<double>(j, "log_exponent"));
  }
  if (kind == "lambda_flavored") return growth_from_lambda(phi, field<double>(j, "lambda"), n);
  if (kind == "power_of") {
    return GrowthFunction::power_of(growth(field<nlohmann::json>(j, "base"), phi, n), field<double>(j, "beta"));
  }
  throw ConfigError("unknown growth function kind '" + kind + "'");
}

GridSpec grid(const nlohmann::json& j, GridSpec base) {
  if (!j.is_object()) throw ConfigError("grid must be an object");
  if (j.contains("dim")) base.dim = field<int>(j, "dim");
  if (j.contains("h")) base.h = field<double>(j, "h");
  if (j.contains("extent")) base.extent = field<double>(j, "extent");
  base.validate();
  return base;
}

MorreySampling sampling(const nlohmann::json& j) {
  MorreySampling s;
  if (!j.is_object()) throw ConfigError("sampling must be an object");
  if (j.contains("r_min")) s.r_min = field<double>(j, "r_min");
  if (j.contains("r_max")) s.r_max = field<double>(j, "r_max");
  if (j.contains("radii")) s.radii = field<int>(j, "radii");
  if (j.contains("center_stride")) s.center_stride = field<int>(j, "center_stride");
  if (j.contains("support_centroid")) s.support_centroid = field<bool>(j, "support_centroid");
  return s;
}

AdamsSetup setup(const nlohmann::json& j) {
  const int n = j.is_object() && j.contains("dim") ? field<int>(j, "dim") : 1;
  if (n != 1 && n != 2) throw DomainError("dimension must be 1 or 2");
  const YoungFunction phi = young(field<nlohmann::json>(j, "young"));
  std::optional<GrowthFunction> varphi;
  if (j.contains("growth")) {
    varphi = growth(field<nlohmann::json>(j, "growth"), phi, n);
  } else if (j.contains("lambda")) {
    varphi = growth_from_lambda(phi, field<double>(j, "lambda"), n);
  } else {
    throw ConfigError("setup needs 'growth' or 'lambda'");
  }
  AdamsSetup s{phi, *varphi, field<double>(j, "alpha"), field<double>(j, "beta"), n};
  s.validate();
  return s;
}

LogGrid range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw ConfigError("range must be tmin:tmax:per_octave");
  LogGrid g{number(parts[0]), number(parts[1]), static_cast<int>(number(parts[2]))};
  if (static_cast<double>(g.per_octave) != number(parts[2])) throw ConfigError("per_octave must be an integer");
  g.validate();
  return g;
}

std::vector<double> number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) out.push_back(number(p));
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

}  // namespace olab::config
