#pragma once

#include <optional>
#include <span>
#include <string>

#include "olab/growth.hpp"
#include "olab/report.hpp"
#include "olab/sampled.hpp"
#include "olab/young.hpp"

namespace olab {

enum class NormKind { orlicz, weak_orlicz, morrey, weak_morrey };

std::string_view to_string(NormKind k) noexcept;

/// Ball family for Morrey suprema. Unset radii default to [4h, 2L].
struct MorreySampling {
  std::optional<double> r_min;
  std::optional<double> r_max;
  int radii = 64;
  int center_stride = 4;      // every k-th cell along each axis
  bool support_centroid = true;

  /// Log-spaced radii with both endpoints included.
  std::vector<double> radius_set(const GridSpec& grid) const;
  /// Sampled centers: the stride sub-lattice, then the support centroid.
  std::vector<Point> center_set(const SampledFunction& f) const;
  std::string describe(const GridSpec& grid) const;
};

struct Truncation {
  double r_min = 0;
  double r_max = 0;
  std::string centers;
};

struct NormEvaluation {
  double value = 0;
  std::optional<Ball> witness;
  std::optional<Truncation> truncation;
  NormKind kind = NormKind::orlicz;
};

/// inf{lambda > 0 : w * sum Phi(v / lambda) <= 1} for cell values v with
/// cell volume w. Relative tolerance 1e-9; infinite when no lambda in the
/// bracket [1e-12 max v, 1e12 max v] works.
double luxemburg_gauge(std::span<const double> values, double cell_volume, const YoungFunction& phi);

/// inf{lambda > 0 : sup_t Phi(t / lambda) d(t) <= 1} where d is the
/// distribution function of the cell values.
double weak_gauge(std::span<const double> values, double cell_volume, const YoungFunction& phi);

NormEvaluation luxemburg_norm(const SampledFunction& f, const YoungFunction& phi,
                              const std::optional<Ball>& over = std::nullopt);

NormEvaluation weak_orlicz_norm(const SampledFunction& f, const YoungFunction& phi,
                                const std::optional<Ball>& over = std::nullopt);

/// sup over sampled balls of Phi^{-1}(|B|^{-1}) / varphi(r) * ||f||_{L^Phi(B)}
/// (weak ball norm when `weak`). |B| is the lattice measure of the ball.
/// Ties go to the smaller radius, then the lexicographically smaller center.
NormEvaluation generalized_orlicz_morrey_norm(const SampledFunction& f, const YoungFunction& phi,
                                              const GrowthFunction& varphi, bool weak,
                                              const MorreySampling& sampling = {});

/// Morrey norm of the indicator of B(0, 1) as r_max grows through 2, 4, ...,
/// 2L and as r_min halves from 1/4 down to 4h. Diverges when either
/// direction does.
ConditionReport triviality_probe(const YoungFunction& phi, const GrowthFunction& varphi, const GridSpec& grid,
                                 const MorreySampling& sampling = {});

}  // namespace olab
