#include "olab/report.hpp"

#include <cmath>

#include "olab/numeric.hpp"

namespace olab {

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::holds_stable:
      return "holds-stable";
    case Verdict::diverges:
      return "diverges";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

namespace {

double growth(double from, double to) {
  if (from == to) return 1.0;
  if (from <= 0.0) return to > 0.0 ? kInfinity : 1.0;
  return to / from;
}

}  // namespace

Verdict assess_doublings(std::span<const double> c) {
  for (double x : c) {
    if (is_infinite(x)) return Verdict::diverges;
  }
  const std::size_t m = c.size();
  if (m >= 3 && growth(c[m - 3], c[m - 2]) >= kDivergenceFactor &&
      growth(c[m - 2], c[m - 1]) >= kDivergenceFactor) {
    return Verdict::diverges;
  }
  if (m >= 2 && growth(c[m - 2], c[m - 1]) <= kStabilityFactor) return Verdict::holds_stable;
  return Verdict::inconclusive;
}

}  // namespace olab
