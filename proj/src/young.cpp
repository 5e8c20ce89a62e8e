#include "olab/young.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "olab/errors.hpp"

namespace olab {

namespace {

// Legendre grid for tabulated conjugates: both s and r run over 2048
// log-spaced nodes in [1e-8, 1e8].
constexpr int kConjugateNodes = 2048;
constexpr double kConjugateLo = 1e-8;
constexpr double kConjugateHi = 1e8;

std::vector<double> conjugate_grid() {
  std::vector<double> g(kConjugateNodes);
  const double lo = std::log(kConjugateLo);
  const double step = (std::log(kConjugateHi) - lo) / (kConjugateNodes - 1);
  for (int i = 0; i < kConjugateNodes; ++i) g[i] = std::exp(lo + step * i);
  g.front() = kConjugateLo;
  g.back() = kConjugateHi;
  return g;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

// Piecewise-linear tabulation of sup_s (r s - Phi(s)).
class ConjugateTable {
 public:
  explicit ConjugateTable(const YoungFunction& phi);

  double eval(double r) const;
  double inverse(double s) const;
  bool has_blowup() const noexcept { return blowup_.has_value(); }
  const nlohmann::json& source() const noexcept { return source_; }

 private:
  struct Sup {
    double value;
    bool resolved;  // false when the maximiser sits on the top of the s grid
  };
  Sup sup_at(double r) const;

  std::vector<double> s_;
  std::vector<double> phi_s_;
  const YoungFunction* phi_ = nullptr;  // valid during construction only

  std::vector<double> r_;
  std::vector<double> v_;
  std::optional<double> blowup_;
  nlohmann::json source_;
};

ConjugateTable::Sup ConjugateTable::sup_at(double r) const {
  const int n = static_cast<int>(s_.size());
  double best = 0.0;  // s = 0
  int arg = -1;
  for (int j = 0; j < n; ++j) {
    const double g = r * s_[j] - phi_s_[j];
    if (g > best) {
      best = g;
      arg = j;
    }
  }
  if (arg == n - 1 && r * s_[n - 1] - phi_s_[n - 1] > r * s_[n - 2] - phi_s_[n - 2]) {
    return {best, false};
  }
  // Golden-section refinement on the bracketing grid cells; the objective
  // is concave so the bracket holds the maximiser.
  double a = arg >= 1 ? s_[arg - 1] : 0.0;
  double b = arg + 1 < n ? s_[arg + 1] : s_[n - 1];
  const auto g = [&](double s) { return r * s - (*phi_)(s); };
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double gc = g(c);
  double gd = g(d);
  for (int it = 0; it < 120 && b - a > 1e-17 * b; ++it) {
    if (gc >= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - kInvPhi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + kInvPhi * (b - a);
      gd = g(d);
    }
  }
  best = std::max({best, gc, gd});
  return {best, true};
}

ConjugateTable::ConjugateTable(const YoungFunction& phi) : s_(conjugate_grid()), phi_(&phi) {
  source_ = phi.to_json();
  phi_s_.resize(s_.size());
  for (std::size_t j = 0; j < s_.size(); ++j) phi_s_[j] = phi(s_[j]);

  const std::vector<double> rg = conjugate_grid();
  r_.push_back(0.0);
  v_.push_back(0.0);
  int first_unresolved = -1;
  for (int i = 0; i < static_cast<int>(rg.size()); ++i) {
    const Sup sup = sup_at(rg[i]);
    if (!sup.resolved) {
      first_unresolved = i;
      break;
    }
    r_.push_back(rg[i]);
    v_.push_back(std::max(sup.value, v_.back()));
  }

  if (first_unresolved >= 0 && phi.asymptotically_linear()) {
    // Genuine blow-up: locate the switch point between the last resolved
    // node and the first unresolved one.
    double lo = r_.back();
    double hi = rg[first_unresolved];
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = lo + 0.5 * (hi - lo);
      if (mid <= lo || mid >= hi) break;
      if (sup_at(mid).resolved) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    if (lo > r_.back()) {
      r_.push_back(lo);
      v_.push_back(std::max(sup_at(lo).value, v_.back()));
    }
    blowup_ = r_.back();
  }
  phi_ = nullptr;
  s_.clear();
  s_.shrink_to_fit();
  phi_s_.clear();
  phi_s_.shrink_to_fit();
}

double ConjugateTable::eval(double r) const {
  if (is_infinite(r)) return kInfinity;
  if (blowup_ && r > *blowup_) return kInfinity;
  const auto it = std::upper_bound(r_.begin(), r_.end(), r);
  std::size_t k;
  if (it == r_.end()) {
    k = r_.size() - 1;  // extrapolate with the last finite slope
  } else {
    k = static_cast<std::size_t>(it - r_.begin());
  }
  if (k == 0) return 0.0;
  const double slope = (v_[k] - v_[k - 1]) / (r_[k] - r_[k - 1]);
  return v_[k - 1] + slope * (r - r_[k - 1]);
}

double ConjugateTable::inverse(double s) const {
  if (is_infinite(s)) return kInfinity;
  const auto it = std::upper_bound(v_.begin(), v_.end(), s);
  if (it != v_.end()) {
    const std::size_t k = static_cast<std::size_t>(it - v_.begin());
    if (k == 0) return 0.0;
    return r_[k - 1] + (s - v_[k - 1]) * (r_[k] - r_[k - 1]) / (v_[k] - v_[k - 1]);
  }
  if (blowup_) return *blowup_;
  const std::size_t k = r_.size() - 1;
  const double slope = (v_[k] - v_[k - 1]) / (r_[k] - r_[k - 1]);
  if (!(slope > 0.0)) return kInfinity;
  return r_[k] + (s - v_[k]) / slope;
}

// ---------------------------------------------------------------------------

YoungFunction YoungFunction::power(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ParameterError("power Young function needs p >= 1");
  return YoungFunction(Power{p});
}

YoungFunction YoungFunction::power_log(double p, double a) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ParameterError("power_log Young function needs p >= 1");
  if (!(a >= 0.0) || !std::isfinite(a)) throw ParameterError("power_log Young function needs a >= 0");
  return YoungFunction(PowerLog{p, a});
}

YoungFunction YoungFunction::exp_minus_one() { return YoungFunction(ExpMinusOne{}); }

YoungFunction YoungFunction::linear_capped() { return YoungFunction(LinearCapped{}); }

YoungFunction::Kind YoungFunction::kind() const noexcept {
  return static_cast<Kind>(rep_.index());
}

double YoungFunction::operator()(double t) const {
  return std::visit(
      overloaded{
          [t](const Power& k) { return std::pow(t, k.p); },
          [t](const PowerLog& k) {
            if (t == 0.0) return 0.0;
            return std::pow(t, k.p) * std::pow(std::log(std::numbers::e + t), k.a);
          },
          [t](const ExpMinusOne&) { return std::expm1(t); },
          [t](const LinearCapped&) { return t <= 1.0 ? 0.0 : kInfinity; },
          [t](const Composed& k) { return (*k.base)(std::pow(t, 1.0 / k.beta)); },
          [t](const Tabulated& k) { return k.table->eval(t); },
      },
      rep_);
}

double YoungFunction::inverse(double s) const {
  return std::visit(
      overloaded{
          [s](const Power& k) { return std::pow(s, 1.0 / k.p); },
          [this, s](const PowerLog&) {
            if (s == 0.0) return 0.0;
            if (is_infinite(s)) return kInfinity;
            double lo = 0.0;
            double hi = 1.0;
            while ((*this)(hi) <= s) {
              lo = hi;
              hi *= 2.0;
              if (hi > 1e300) return kInfinity;
            }
            // Relative precision keeps small inverses accurate too.
            return bisect_threshold([&](double r) { return (*this)(r) > s; }, lo, hi, 0.0);
          },
          [s](const ExpMinusOne&) { return std::log1p(s); },
          [s](const LinearCapped&) { return is_infinite(s) ? kInfinity : 1.0; },
          [s](const Composed& k) { return std::pow(k.base->inverse(s), k.beta); },
          [s](const Tabulated& k) { return k.table->inverse(s); },
      },
      rep_);
}

std::optional<double> YoungFunction::homogeneity() const noexcept {
  if (const auto* k = std::get_if<Power>(&rep_)) return k->p;
  if (const auto* k = std::get_if<Composed>(&rep_)) {
    if (auto p = k->base->homogeneity()) return *p / k->beta;
  }
  return std::nullopt;
}

bool YoungFunction::asymptotically_linear() const noexcept {
  if (const auto* k = std::get_if<Power>(&rep_)) return k->p == 1.0;
  if (const auto* k = std::get_if<PowerLog>(&rep_)) return k->p == 1.0 && k->a == 0.0;
  if (const auto* k = std::get_if<Tabulated>(&rep_)) return !k->table->has_blowup();
  return false;
}

nlohmann::json YoungFunction::to_json() const {
  using nlohmann::json;
  return std::visit(overloaded{
                        [](const Power& k) { return json{{"kind", "power"}, {"p", k.p}}; },
                        [](const PowerLog& k) {
                          return json{{"kind", "power_log"}, {"p", k.p}, {"a", k.a}};
                        },
                        [](const ExpMinusOne&) { return json{{"kind", "exp_minus_one"}}; },
                        [](const LinearCapped&) { return json{{"kind", "linear_capped"}}; },
                        [](const Composed& k) {
                          return json{{"kind", "composed_power"}, {"base", k.base->to_json()}, {"beta", k.beta}};
                        },
                        [](const Tabulated& k) { return json{{"kind", "conjugate"}, {"of", k.table->source()}}; },
                    },
                    rep_);
}

std::string YoungFunction::describe() const { return to_json().dump(); }

double YoungFunction::exponent() const noexcept {
  if (const auto* k = std::get_if<Power>(&rep_)) return k->p;
  if (const auto* k = std::get_if<PowerLog>(&rep_)) return k->p;
  return 0.0;
}

double YoungFunction::log_exponent() const noexcept {
  if (const auto* k = std::get_if<PowerLog>(&rep_)) return k->a;
  return 0.0;
}

const YoungFunction& YoungFunction::base() const {
  if (const auto* k = std::get_if<Composed>(&rep_)) return *k->base;
  throw ParameterError("Young function has no base: not a composed power");
}

double YoungFunction::beta() const noexcept {
  if (const auto* k = std::get_if<Composed>(&rep_)) return k->beta;
  return 0.0;
}

// ---------------------------------------------------------------------------

double eval_young(const YoungFunction& phi, double t) {
  if (!(t >= 0.0)) throw DomainError("Young function evaluated at a negative argument");
  return phi(t);
}

double invert_young(const YoungFunction& phi, double s) {
  if (!(s >= 0.0)) throw DomainError("Young function inverse evaluated at a negative argument");
  return phi.inverse(s);
}

YoungFunction conjugate_young(const YoungFunction& phi) {
  return YoungFunction(YoungFunction::Tabulated{std::make_shared<const ConjugateTable>(phi)});
}

YoungFunction compose_power(const YoungFunction& phi, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("compose_power needs 0 < beta < 1");
  return YoungFunction(YoungFunction::Composed{std::make_shared<const YoungFunction>(phi), beta});
}

std::string_view to_string(GrowthClass c) noexcept {
  switch (c) {
    case GrowthClass::delta2:
      return "delta2";
    case GrowthClass::nabla2:
      return "nabla2";
    case GrowthClass::delta_prime:
      return "delta_prime";
  }
  return "?";
}

namespace {

// Smallest C with a <= C b; zero when the inequality holds for every C
// (including inf <= C inf), infinite when no finite C works.
double required_constant(double a, double b) {
  if (!(a > 0.0)) return 0.0;
  if (is_infinite(b)) return 0.0;
  if (b == 0.0 || is_infinite(a)) return kInfinity;
  return a / b;
}

struct Best {
  double constant = 0.0;
  double witness = 0.0;
};

Best delta2_constant(const YoungFunction& phi, const std::vector<double>& t) {
  Best best;
  for (double r : t) {
    const double c = required_constant(phi(2.0 * r), phi(r));
    if (c > best.constant) best = {c, r};
  }
  return best;
}

Best delta_prime_constant(const YoungFunction& phi, const std::vector<double>& t) {
  Best best;
  std::vector<double> vals(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) vals[i] = phi(t[i]);
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i; j < t.size(); ++j) {
      const double prod = (vals[i] == 0.0 || vals[j] == 0.0) ? 0.0 : vals[i] * vals[j];
      const double c = required_constant(phi(t[i] * t[j]), prod);
      if (c > best.constant) best = {c, t[i]};
    }
  }
  return best;
}

Best nabla2_constant(const YoungFunction& phi, const std::vector<double>& t) {
  // Candidates C = 2^(k/16), 1 < C <= 2^20.
  for (int k = 1; k <= 16 * 20; ++k) {
    const double c = std::exp2(k / 16.0);
    bool ok = true;
    double worst_r = 0.0;
    for (double r : t) {
      const double lhs = phi(r);
      if (lhs == 0.0) continue;
      const double rhs = phi(c * r);
      if (is_infinite(rhs)) continue;
      if (is_infinite(lhs) || 2.0 * c * lhs > rhs * (1.0 + 1e-12)) {
        ok = false;
        worst_r = r;
        break;
      }
    }
    if (ok) return {c, worst_r};
  }
  return {kInfinity, 0.0};
}

}  // namespace

ConditionReport classify_growth(const YoungFunction& phi, GrowthClass cls, const LogGrid& range) {
  range.validate();
  const std::vector<double> all = range.nodes();
  ConditionReport report;
  report.condition = std::string(to_string(cls));
  {
    std::ostringstream os;
    os << "t in [" << range.t_min << ", " << range.t_max << "], " << range.per_octave << "/octave";
    report.range = os.str();
  }
  std::vector<double> constants;
  for (int j = 0; j < 3; ++j) {
    const double lo = range.t_min * std::exp2(2 - j);
    const double hi = range.t_max * std::exp2(j - 2);
    std::vector<double> window;
    for (double t : all) {
      if (t >= lo * (1 - 1e-12) && t <= hi * (1 + 1e-12)) window.push_back(t);
    }
    if (window.empty()) continue;
    Best b;
    switch (cls) {
      case GrowthClass::delta2:
        b = delta2_constant(phi, window);
        break;
      case GrowthClass::nabla2:
        b = nabla2_constant(phi, window);
        break;
      case GrowthClass::delta_prime:
        b = delta_prime_constant(phi, window);
        break;
    }
    report.steps.push_back({"window_max", hi, b.constant, b.witness});
    constants.push_back(b.constant);
  }
  report.verdict = assess_doublings(constants);
  return report;
}

std::vector<std::string> check_young_invariants(const YoungFunction& phi, const LogGrid& grid) {
  std::vector<std::string> issues;
  const auto fail = [&](const std::string& what, double t) {
    std::ostringstream os;
    os << what << " at t=" << t;
    issues.push_back(os.str());
  };
  if (phi(0.0) != 0.0) fail("Phi(0) != 0", 0.0);
  std::vector<double> t = grid.nodes();
  t.insert(t.begin(), 0.0);
  std::vector<double> v(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) v[i] = phi(t[i]);
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (std::isnan(v[i]) || v[i] < 0.0) fail("negative or NaN value", t[i]);
    if (v[i] < v[i - 1]) fail("not nondecreasing", t[i]);
    if (is_infinite(v[i - 1]) && !is_infinite(v[i])) fail("finite after infinite", t[i]);
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t step : {1u, 2u, 4u}) {
      const std::size_t j = i + step;
      if (j >= t.size() || is_infinite(v[i]) || is_infinite(v[j])) continue;
      const double mid = phi(0.5 * (t[i] + t[j]));
      const double chord = 0.5 * (v[i] + v[j]);
      if (mid > chord + 1e-9 * std::max(1.0, chord)) fail("midpoint convexity violated", t[i]);
    }
  }
  const double top = v.back();
  const double below = phi(0.5 * t.back());
  if (!is_infinite(top) && !(top > below)) fail("no growth at the top of the grid", t.back());
  return issues;
}

}  // namespace olab
