#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace olab {

/// Extended-real infinity. All operations treat it with the usual
/// conventions (x + inf = inf, inf > every finite value).
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

inline bool is_infinite(double x) noexcept { return x == kInfinity; }

/// Relative slack used for "ties count as inside" ball membership.
inline constexpr double kTieSlack = 1e-12;

/// Dyadic log grid t_min * 2^(k / per_octave), k = 0, 1, ... up to t_max.
struct LogGrid {
  double t_min = 0x1p-10;
  double t_max = 0x1p10;
  int per_octave = 32;

  std::vector<double> nodes() const;
  void validate() const;
};

/// Smallest r in [lo, hi] with pred(r) true, assuming pred is monotone
/// (false below the threshold, true above). Stops when the bracket is below
/// max(abs_tol, rel_tol * hi); returns the upper end of the final bracket.
template <class Pred>
double bisect_threshold(Pred&& pred, double lo, double hi, double abs_tol,
                        double rel_tol = 4 * std::numeric_limits<double>::epsilon()) {
  for (int it = 0; it < 2000; ++it) {
    if (hi - lo <= abs_tol || hi - lo <= rel_tol * std::abs(hi)) break;
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (pred(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace olab
