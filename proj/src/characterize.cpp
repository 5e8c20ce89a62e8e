#include "olab/characterize.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "olab/errors.hpp"

namespace olab {

void AdamsSetup::validate() const {
  if (dim != 1 && dim != 2) throw DomainError("dimension must be 1 or 2");
  if (!(alpha > 0.0 && alpha < dim)) throw DomainError("alpha must lie in (0, n)");
  if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("beta must lie in (0, 1)");
}

YoungFunction AdamsSetup::psi() const { return compose_power(phi, beta); }

GrowthFunction AdamsSetup::eta() const { return GrowthFunction::power_of(varphi, beta); }

GrowthFunction growth_from_lambda(const YoungFunction& phi, double lambda, int n) {
  return GrowthFunction::lambda_flavored(phi, lambda, n);
}

std::vector<double> default_rmax_schedule() {
  std::vector<double> s;
  for (int k = 4; k <= 10; ++k) s.push_back(std::exp2(k));
  s.push_back(std::exp2(16));
  s.push_back(std::exp2(32));
  return s;
}

LogGrid default_condition_range() { return LogGrid{std::exp2(-32), std::exp2(32), 32}; }

std::string_view to_string(MembershipClass c) noexcept {
  return c == MembershipClass::omega ? "omega" : "g_phi";
}

namespace {

constexpr std::pair<ConditionKind, std::string_view> kConditionNames[] = {
    {ConditionKind::supremal_maximal, "supremal-maximal"},
    {ConditionKind::adams_sufficient, "adams-sufficient"},
    {ConditionKind::adams_necessary, "adams-necessary"},
    {ConditionKind::lambda_sufficient, "lambda-sufficient"},
    {ConditionKind::lambda_necessary, "lambda-necessary"},
    {ConditionKind::riesz_sufficient, "riesz-sufficient"},
    {ConditionKind::riesz_regularity, "riesz-regularity"},
};

// Dyadic node grid t0 * 2^(k / per_octave) covering the t range and every
// truncation level together with its reciprocal.
struct Nodes {
  double t0;
  int per_octave;
  long k_lo;
  std::vector<double> t;

  long index(double x) const {
    return std::lround(std::log2(x / t0) * per_octave) - k_lo;
  }
};

Nodes make_nodes(const LogGrid& range, std::span<const double> schedule) {
  range.validate();
  Nodes nd{range.t_min, range.per_octave, 0, {}};
  double lo = range.t_min;
  double hi = range.t_max;
  for (double r : schedule) {
    if (!(r > 1.0) || !std::isfinite(r)) throw ConfigError("truncation levels must be finite and > 1");
    lo = std::min(lo, 1.0 / r);
    hi = std::max(hi, r);
  }
  nd.k_lo = std::min(0L, std::lround(std::log2(lo / range.t_min) * range.per_octave));
  const long k_hi = std::lround(std::log2(hi / range.t_min) * range.per_octave);
  for (long k = nd.k_lo; k <= k_hi; ++k) nd.t.push_back(range.t_min * std::exp2(static_cast<double>(k) / range.per_octave));
  return nd;
}

// Index window [a, b] of t values at level R, plus the index of R itself.
struct Window {
  long a, b, top;
};

Window window_at(const Nodes& nd, const LogGrid& range, double r) {
  const long a = nd.index(std::max(range.t_min, 1.0 / r));
  const long b = nd.index(std::min(range.t_max, r));
  return {a, std::max(a, b), nd.index(r)};
}

std::vector<double> resolve_schedule(std::span<const double> schedule) {
  std::vector<double> s(schedule.begin(), schedule.end());
  if (s.empty()) s = default_rmax_schedule();
  if (!std::is_sorted(s.begin(), s.end())) throw ConfigError("truncation schedule must be increasing");
  return s;
}

// Without tails beyond the window, levels past the one whose window covers
// the whole range only repeat its constant, so the schedule stops there.
std::vector<double> window_levels(std::vector<double> levels, const LogGrid& range) {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (1.0 / levels[i] <= range.t_min && levels[i] >= range.t_max) {
      levels.resize(i + 1);
      break;
    }
  }
  return levels;
}

// Constants along R_last^(1/4), R_last^(1/2), R_last when those levels are
// scheduled (each doubles the log extent of the previous one); otherwise the
// last three entries.
Verdict schedule_verdict(const std::vector<double>& levels, const std::vector<double>& constants) {
  if (levels.size() >= 3) {
    const double last = levels.back();
    const auto find = [&](double r) -> long {
      for (std::size_t i = 0; i < levels.size(); ++i) {
        if (std::abs(levels[i] - r) <= 1e-9 * r) return static_cast<long>(i);
      }
      return -1;
    };
    const long q = find(std::pow(last, 0.25));
    const long h = find(std::sqrt(last));
    if (q >= 0 && h >= 0 && q < h) {
      const double chain[] = {constants[static_cast<std::size_t>(q)], constants[static_cast<std::size_t>(h)],
                              constants.back()};
      return assess_doublings(chain);
    }
  }
  const std::size_t m = constants.size();
  const std::size_t from = m > 3 ? m - 3 : 0;
  return assess_doublings(std::span<const double>(constants).subspan(from));
}

std::string describe_range(const LogGrid& range, const std::vector<double>& levels) {
  std::ostringstream os;
  os << "t in [" << range.t_min << ", " << range.t_max << "], " << range.per_octave << "/octave; R_max";
  for (double r : levels) os << ' ' << r;
  return os.str();
}

void require_positive(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw ConfigError(std::string(what) + " must be positive and finite on the probed range");
    }
  }
}

}  // namespace

std::string_view to_string(ConditionKind k) noexcept {
  for (const auto& [kind, name] : kConditionNames) {
    if (kind == k) return name;
  }
  return "?";
}

ConditionKind parse_condition(std::string_view name) {
  for (const auto& [kind, text] : kConditionNames) {
    if (text == name) return kind;
  }
  throw ConfigError("unknown condition '" + std::string(name) + "'");
}

ConditionReport check_membership(const GrowthFunction& varphi, const YoungFunction& phi, MembershipClass cls,
                                 const LogGrid& range, std::span<const double> schedule_in, int n) {
  const std::vector<double> levels = window_levels(resolve_schedule(schedule_in), range);
  const Nodes nd = make_nodes(range, levels);
  const std::size_t m = nd.t.size();
  std::vector<double> g(m), inv(m);
  for (std::size_t k = 0; k < m; ++k) {
    g[k] = varphi(nd.t[k]);
    inv[k] = phi.inverse(1.0 / ball_measure(n, nd.t[k]));
  }
  require_positive(g, "growth function");

  ConditionReport report;
  report.condition = std::string(to_string(cls));
  report.range = describe_range(range, levels);
  std::vector<double> constants;
  for (double r : levels) {
    const Window w = window_at(nd, range, r);
    double c = 0.0;
    double witness = nd.t[static_cast<std::size_t>(w.a)];
    if (cls == MembershipClass::omega) {
      // Anchor t = 1: tail sup of Phi^{-1}(|B|^-1) / varphi above it and the
      // sup of 1 / varphi below it.
      const long one = std::clamp(nd.index(1.0), w.a, w.b);
      for (long k = one; k <= w.b; ++k) {
        const double v = inv[static_cast<std::size_t>(k)] / g[static_cast<std::size_t>(k)];
        if (v > c) c = v, witness = nd.t[static_cast<std::size_t>(k)];
      }
      for (long k = w.a; k <= one; ++k) {
        const double v = 1.0 / g[static_cast<std::size_t>(k)];
        if (v > c) c = v, witness = nd.t[static_cast<std::size_t>(k)];
      }
    } else {
      // Almost decreasing: sup over r <= s of g(s) / g(r), via a running
      // min. Almost increasing g / Phi^{-1}(t^-n): running max.
      double run_min = kInfinity;
      double run_max = 0.0;
      for (long k = w.a; k <= w.b; ++k) {
        const std::size_t i = static_cast<std::size_t>(k);
        const double psi = g[i] / phi.inverse(std::pow(nd.t[i], -n));
        run_min = std::min(run_min, g[i]);
        run_max = std::max(run_max, psi);
        const double v = std::max(g[i] / run_min, run_max / psi);
        if (v > c) c = v, witness = nd.t[i];
      }
    }
    report.steps.push_back({"R_max", r, c, witness});
    constants.push_back(c);
  }
  report.verdict = schedule_verdict(levels, constants);
  return report;
}

ConditionReport check_condition(ConditionKind kind, const AdamsSetup& setup, const LogGrid& range,
                                std::span<const double> schedule_in) {
  setup.validate();
  const bool pointwise = kind == ConditionKind::adams_necessary || kind == ConditionKind::lambda_necessary;
  const std::vector<double> levels =
      pointwise ? window_levels(resolve_schedule(schedule_in), range) : resolve_schedule(schedule_in);
  const Nodes nd = make_nodes(range, levels);
  const std::size_t m = nd.t.size();
  const int n = setup.dim;
  const double alpha = setup.alpha;
  const double beta = setup.beta;

  const bool lambda_kind = kind == ConditionKind::lambda_sufficient || kind == ConditionKind::lambda_necessary;
  if (lambda_kind && !setup.varphi.lambda()) {
    throw ConfigError("lambda conditions need a lambda_flavored growth function");
  }

  std::vector<double> g(m), tpow(m), inv(m);
  for (std::size_t k = 0; k < m; ++k) {
    g[k] = setup.varphi(nd.t[k]);
    tpow[k] = std::pow(nd.t[k], alpha);
    inv[k] = setup.phi.inverse(1.0 / ball_measure(n, nd.t[k]));
  }
  require_positive(g, "growth function");
  const double du = std::log(2.0) / range.per_octave;

  ConditionReport report;
  report.condition = std::string(to_string(kind));
  report.range = describe_range(range, levels);
  std::vector<double> constants;

  for (double r : levels) {
    const Window w = window_at(nd, range, r);
    const std::size_t top = static_cast<std::size_t>(w.top);
    const std::size_t a = static_cast<std::size_t>(w.a);
    const std::size_t b = static_cast<std::size_t>(w.b);

    // tail[k]: sup or integral over [t_k, R] of the relevant integrand.
    std::vector<double> tail(top + 1, 0.0);
    std::vector<double> tail2;
    switch (kind) {
      case ConditionKind::supremal_maximal: {
        std::vector<double> inner(top + 1);
        double run = 0.0;
        for (std::size_t k = top + 1; k-- > 0;) {
          run = std::max(run, g[k] / inv[k]);
          inner[k] = inv[k] * run;
        }
        run = 0.0;
        for (std::size_t k = top + 1; k-- > 0;) {
          run = std::max(run, inner[k]);
          tail[k] = run;
        }
        break;
      }
      case ConditionKind::adams_sufficient:
      case ConditionKind::lambda_sufficient: {
        double run = 0.0;
        for (std::size_t k = top + 1; k-- > 0;) {
          run = std::max(run, tpow[k] * g[k]);
          tail[k] = run;
        }
        break;
      }
      case ConditionKind::riesz_sufficient:
      case ConditionKind::riesz_regularity: {
        double acc = 0.0;
        tail[top] = 0.0;
        for (std::size_t k = top; k-- > 0;) {
          acc += 0.5 * du * (tpow[k] * g[k] + tpow[k + 1] * g[k + 1]);
          tail[k] = acc;
        }
        break;
      }
      default:
        break;
    }

    double c = 0.0;
    double witness = nd.t[a];
    for (std::size_t k = a; k <= b; ++k) {
      const double own = tpow[k] * g[k];
      double v = 0.0;
      switch (kind) {
        case ConditionKind::supremal_maximal:
          v = tail[k] / g[k];
          break;
        case ConditionKind::adams_sufficient:
        case ConditionKind::riesz_sufficient:
          v = (own + tail[k]) / std::pow(g[k], beta);
          break;
        case ConditionKind::adams_necessary:
        case ConditionKind::lambda_necessary:
          v = tpow[k] * std::pow(g[k], 1.0 - beta);
          break;
        case ConditionKind::lambda_sufficient:
        case ConditionKind::riesz_regularity:
          v = tail[k] / own;
          break;
      }
      if (v > c) {
        c = v;
        witness = nd.t[k];
      }
    }
    report.steps.push_back({"R_max", r, c, witness});
    constants.push_back(c);
  }
  report.verdict = schedule_verdict(levels, constants);
  return report;
}

// ---------------------------------------------------------------------------

std::vector<FamilyMember> indicator_family(const GridSpec& grid) {
  std::vector<FamilyMember> out;
  for (int k = -4; k <= 4; ++k) {
    const double t0 = std::exp2(k);
    if (t0 < 0.5 * grid.h || t0 > grid.extent * (1 + 1e-12)) continue;
    std::ostringstream id;
    id << "indicator_r=2^" << k;
    out.push_back({id.str(), sample_function(grid, {{"type", "ball_indicator"}, {"radius", t0}})});
  }
  return out;
}

std::vector<FamilyMember> power_decay_family(const GridSpec& grid) {
  std::vector<FamilyMember> out;
  for (double g : {0.1, 0.2, 0.3, 0.4}) {
    const double gamma = g * grid.dim;
    std::ostringstream id;
    id << "power_decay_gamma=" << gamma;
    out.push_back({id.str(), sample_function(grid, {{"type", "power_decay"}, {"gamma", gamma}, {"radius", 1.0}})});
  }
  return out;
}

std::vector<FamilyMember> random_family(const GridSpec& grid, std::size_t count, std::uint64_t seed) {
  grid.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(-0.5 * grid.extent, 0.5 * grid.extent);
  std::uniform_real_distribution<double> rad(4.0 * grid.h, std::max(4.0 * grid.h, 0.25 * grid.extent));
  std::uniform_real_distribution<double> amp(0.5, 2.0);
  std::uniform_int_distribution<int> terms(1, 4);
  std::vector<FamilyMember> out;
  for (std::size_t m = 0; m < count; ++m) {
    nlohmann::json sum{{"type", "sum"}, {"terms", nlohmann::json::array()}};
    const int nt = terms(rng);
    for (int t = 0; t < nt; ++t) {
      nlohmann::json center = nlohmann::json::array();
      for (int d = 0; d < grid.dim; ++d) center.push_back(pos(rng));
      const double r = rad(rng);
      const double a = amp(rng);
      sum["terms"].push_back({{"type", "ball_indicator"}, {"center", center}, {"radius", r}, {"amplitude", a}});
    }
    out.push_back({"random_" + std::to_string(m), sample_function(grid, sum)});
  }
  return out;
}

SampledFunction apply_operator(const SampledFunction& f, OperatorKind op, double alpha) {
  if (op == OperatorKind::riesz) return riesz_potential(f, alpha);
  OperatorSpec spec;
  spec.alpha = alpha;
  return maximal(f, spec);
}

std::vector<NormRow> estimate_operator_norm(const AdamsSetup& setup, OperatorKind op, Target target,
                                            const std::vector<FamilyMember>& family,
                                            const MorreySampling& sampling) {
  setup.validate();
  if (family.empty()) throw ConfigError("test family is empty");
  const YoungFunction psi = setup.psi();
  const GrowthFunction eta = setup.eta();
  std::vector<NormRow> rows;
  for (const FamilyMember& m : family) {
    if (m.f.grid().dim != setup.dim) throw ConfigError("family grid dimension does not match the setup");
    NormRow row;
    row.id = m.id;
    if (m.f.is_zero()) {
      row.skipped = true;
      row.notice = "zero function skipped";
      rows.push_back(row);
      continue;
    }
    row.source = generalized_orlicz_morrey_norm(m.f, setup.phi, setup.varphi, false, sampling).value;
    if (row.source == 0.0) {
      row.skipped = true;
      row.notice = "zero source norm skipped";
      rows.push_back(row);
      continue;
    }
    const SampledFunction tf = apply_operator(m.f, op, setup.alpha);
    const NormEvaluation tn = generalized_orlicz_morrey_norm(tf, psi, eta, target == Target::weak, sampling);
    row.target = tn.value;
    row.witness = tn.witness;
    row.ratio = row.target / row.source;
    rows.push_back(row);
  }
  return rows;
}

WitnessTable necessity_witness(const AdamsSetup& setup, std::span<const double> t0_grid, const GridSpec& grid,
                               const MorreySampling& sampling) {
  setup.validate();
  grid.validate();
  for (double t0 : t0_grid) {
    if (!(t0 >= 0.5 * grid.h) || t0 > grid.extent * (1 + 1e-12)) {
      std::ostringstream os;
      os << "ball not representable: radius " << t0 << " outside [" << 0.5 * grid.h << ", " << grid.extent << "]";
      throw UnrepresentableBall(os.str());
    }
  }
  const YoungFunction psi = setup.psi();
  const GrowthFunction eta = setup.eta();
  OperatorSpec spec;
  spec.alpha = setup.alpha;
  WitnessTable table;
  for (double t0 : t0_grid) {
    const SampledFunction chi = sample_function(grid, {{"type", "ball_indicator"}, {"radius", t0}});
    const double src = generalized_orlicz_morrey_norm(chi, setup.phi, setup.varphi, false, sampling).value;
    const double dst = generalized_orlicz_morrey_norm(maximal(chi, spec), psi, eta, false, sampling).value;
    WitnessRow row{t0, std::pow(t0, setup.alpha) * std::pow(setup.varphi(t0), 1.0 - setup.beta), dst / src};
    table.k = std::max(table.k, row.lower_bound / row.measured);
    table.rows.push_back(row);
  }
  return table;
}

PointwiseReport check_pointwise_inequalities(const AdamsSetup& setup, const SampledFunction& f,
                                             const MorreySampling& sampling) {
  setup.validate();
  PointwiseReport rep;
  if (f.is_zero()) return rep;
  OperatorSpec frac;
  frac.alpha = setup.alpha;
  const SampledFunction ma = maximal(f, frac);
  const SampledFunction m0 = maximal(f, OperatorSpec{});
  rep.source_norm = generalized_orlicz_morrey_norm(f, setup.phi, setup.varphi, false, sampling).value;
  const double scale = std::pow(rep.source_norm, 1.0 - setup.beta);
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (!(m0[k] > 0.0)) continue;
    ++rep.points;
    const double v = ma[k] / (std::pow(m0[k], setup.beta) * scale);
    if (v > rep.max_ratio) {
      rep.max_ratio = v;
      rep.witness = f.grid().point(k);
    }
  }
  return rep;
}

}  // namespace olab
