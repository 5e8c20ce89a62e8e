#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace olab {

enum class Verdict { holds_stable, diverges, inconclusive };

std::string_view to_string(Verdict v) noexcept;

/// Growth of the best constant between two successive truncation levels that
/// counts as divergence, when seen on two consecutive doublings of the range.
inline constexpr double kDivergenceFactor = 1.3;
/// Largest relative change over the final doubling that still counts as a
/// plateau.
inline constexpr double kStabilityFactor = 1.05;

/// Classifies a sequence of best constants measured on ranges that double
/// from one entry to the next. Any infinite constant means divergence.
Verdict assess_doublings(std::span<const double> constants);

/// One truncation level of a condition check.
struct ConditionStep {
  std::string label;   // what `level` measures, e.g. "r_max" or "window"
  double level = 0;    // truncation parameter at this step
  double constant = 0; // best constant observed at this step
  double witness = 0;  // parameter where the constant was attained
};

/// Best-constant estimates for one condition across truncation levels.
struct ConditionReport {
  std::string condition;
  std::string range;  // human-readable description of the probed range
  std::vector<ConditionStep> steps;
  Verdict verdict = Verdict::inconclusive;

  double final_constant() const { return steps.empty() ? 0.0 : steps.back().constant; }
};

}  // namespace olab
