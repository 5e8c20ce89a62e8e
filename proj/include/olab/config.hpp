#pragma once

#include <string>

#include "json.hpp"
#include "olab/characterize.hpp"
#include "olab/growth.hpp"
#include "olab/norms.hpp"
#include "olab/sampled.hpp"
#include "olab/young.hpp"

namespace olab::config {

/// Parses `text` as JSON when it starts with '{' or '[', otherwise reads it
/// as a file path. Malformed input throws ConfigError.
nlohmann::json load(const std::string& text);

YoungFunction young(const nlohmann::json& j);

/// lambda_flavored records resolve against phi in dimension n.
GrowthFunction growth(const nlohmann::json& j, const YoungFunction& phi, int n);

/// Overlays the fields present in j onto `base`.
GridSpec grid(const nlohmann::json& j, GridSpec base);

MorreySampling sampling(const nlohmann::json& j);

/// {"young": ..., "growth": ... | "lambda": ..., "alpha", "beta", "dim"}.
AdamsSetup setup(const nlohmann::json& j);

/// "tmin:tmax:per_octave".
LogGrid range(const std::string& text);

/// Comma-separated increasing list of positive reals.
std::vector<double> number_list(const std::string& text);

}  // namespace olab::config
