#include "olab/numeric.hpp"

#include "olab/errors.hpp"

namespace olab {

void LogGrid::validate() const {
  if (!(t_min > 0.0) || !(t_max >= t_min) || !std::isfinite(t_max)) {
    throw ConfigError("log grid needs 0 < t_min <= t_max < inf");
  }
  if (per_octave < 1) throw ConfigError("log grid needs at least one node per octave");
}

std::vector<double> LogGrid::nodes() const {
  validate();
  std::vector<double> out;
  const double limit = t_max * (1.0 + 1e-12);
  for (long k = 0;; ++k) {
    const double t = t_min * std::exp2(static_cast<double>(k) / per_octave);
    if (t > limit) break;
    out.push_back(t);
  }
  return out;
}

}  // namespace olab
