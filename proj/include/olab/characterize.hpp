#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "olab/growth.hpp"
#include "olab/norms.hpp"
#include "olab/numeric.hpp"
#include "olab/operators.hpp"
#include "olab/report.hpp"
#include "olab/sampled.hpp"
#include "olab/young.hpp"

namespace olab {

/// Phi, varphi, alpha and beta; Psi and eta are always derived, never stored.
struct AdamsSetup {
  YoungFunction phi;
  GrowthFunction varphi;
  double alpha = 0.25;
  double beta = 0.5;
  int dim = 1;

  void validate() const;
  /// Psi(t) = Phi(t^(1/beta)).
  YoungFunction psi() const;
  /// eta = varphi^beta.
  GrowthFunction eta() const;
};

/// t -> Phi^{-1}(t^-n) / Phi^{-1}(t^-lambda).
GrowthFunction growth_from_lambda(const YoungFunction& phi, double lambda, int n = 1);

/// Truncation levels R for sups and integrals over (t, inf), and for the
/// t window [1/R, R]. Default: 2^4 .. 2^10, 2^16, 2^32.
std::vector<double> default_rmax_schedule();
/// Default t grid: [2^-32, 2^32], 32 nodes per octave.
LogGrid default_condition_range();

enum class MembershipClass { omega, g_phi };
std::string_view to_string(MembershipClass c) noexcept;

ConditionReport check_membership(const GrowthFunction& varphi, const YoungFunction& phi, MembershipClass cls,
                                 const LogGrid& range = default_condition_range(),
                                 std::span<const double> schedule = {}, int n = 1);

enum class ConditionKind {
  supremal_maximal,
  adams_sufficient,
  adams_necessary,
  lambda_sufficient,
  lambda_necessary,
  riesz_sufficient,
  riesz_regularity,
};
std::string_view to_string(ConditionKind k) noexcept;
/// Parses the dashed name, e.g. "adams-necessary"; throws ConfigError.
ConditionKind parse_condition(std::string_view name);

/// Best constant C(R) of the condition for every R in the schedule, with
/// the verdict taken across doublings of the logarithmic extent of R.
ConditionReport check_condition(ConditionKind kind, const AdamsSetup& setup,
                                const LogGrid& range = default_condition_range(),
                                std::span<const double> schedule = {});

enum class OperatorKind { fractional_maximal, riesz };
enum class Target { strong, weak };

struct FamilyMember {
  std::string id;
  SampledFunction f;
};

/// Indicators of B(0, 2^k), k = -4..4, keeping the radii the grid can
/// represent (h/2 <= t0 <= L).
std::vector<FamilyMember> indicator_family(const GridSpec& grid);
/// |y|^-gamma on B(0, 1) for gamma in {0.1, 0.2, 0.3, 0.4} * n.
std::vector<FamilyMember> power_decay_family(const GridSpec& grid);
/// Sums of one to four ball indicators with random centers, radii and
/// amplitudes, from a seeded mt19937_64.
std::vector<FamilyMember> random_family(const GridSpec& grid, std::size_t count, std::uint64_t seed);

struct NormRow {
  std::string id;
  double source = 0;
  double target = 0;
  double ratio = 0;
  std::optional<Ball> witness;  // target witness
  bool skipped = false;
  std::string notice;
};

SampledFunction apply_operator(const SampledFunction& f, OperatorKind op, double alpha);

/// Source Morrey norm in (Phi, varphi), target norm of T f in (Psi, eta),
/// and their ratio, per family member. Zero sources are skipped.
std::vector<NormRow> estimate_operator_norm(const AdamsSetup& setup, OperatorKind op, Target target,
                                            const std::vector<FamilyMember>& family,
                                            const MorreySampling& sampling = {});

struct WitnessRow {
  double t0 = 0;
  double lower_bound = 0;  // t0^alpha * varphi(t0)^(1 - beta)
  double measured = 0;     // ||M_alpha chi||_{Psi, eta} / ||chi||_{Phi, varphi}
};

struct WitnessTable {
  std::vector<WitnessRow> rows;
  /// Smallest K with measured >= lower_bound / K on every row.
  double k = 0;
};

/// Throws UnrepresentableBall when some t0 is outside [h/2, L].
WitnessTable necessity_witness(const AdamsSetup& setup, std::span<const double> t0_grid, const GridSpec& grid,
                               const MorreySampling& sampling = {});

struct PointwiseReport {
  double max_ratio = 0;  // M_alpha f / ((M f)^beta ||f||^(1 - beta))
  std::optional<Point> witness;
  std::size_t points = 0;  // grid points with M f > 0
  double source_norm = 0;
};

PointwiseReport check_pointwise_inequalities(const AdamsSetup& setup, const SampledFunction& f,
                                             const MorreySampling& sampling = {});

}  // namespace olab
