#pragma once

#include <cmath>

#include "olab/sampled.hpp"

namespace olab::detail {

// Index bounding box of {f > 0}; empty when f vanishes.
struct SupportBox {
  bool empty = true;
  long ilo = 0, ihi = -1, jlo = 0, jhi = -1;
};

SupportBox support_box(const SampledFunction& f);

// |B|^{alpha/n - 1} * integral, from a lattice count and a raw value sum.
inline double ball_average(double count, double sum, const GridSpec& g, double alpha) {
  const double cell = g.cell_volume();
  return std::pow(count * cell, alpha / g.dim - 1.0) * sum * cell;
}

inline double riesz_weight_1d(long k, double h, double alpha) {
  return h * std::pow(static_cast<double>(k) * h, alpha - 1.0);
}

inline double riesz_weight_2d(long a, long b, double h, double alpha) {
  const double d = std::sqrt(static_cast<double>(a * a + b * b)) * h;
  return h * h * std::pow(d, alpha - 2.0);
}

}  // namespace olab::detail
