#include "olab/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "olab/characterize.hpp"
#include "olab/config.hpp"
#include "olab/errors.hpp"
#include "olab/norms.hpp"
#include "olab/operators.hpp"
#include "olab/young.hpp"

namespace olab {

namespace {

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// JSON has no infinity; finite values stay numbers.
nlohmann::json json_num(double v) {
  if (std::isfinite(v)) return v;
  return num(v);
}

std::string quoted(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Versioned CSV, assembled in memory so nothing is written on failure.
class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : cols_(header.size()) {
    text_ << "# olab-schema v1\n";
    row(header);
  }
  void row(const std::vector<std::string>& cells) {
    if (cells.size() != cols_) throw std::logic_error("CSV row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) text_ << (i ? "," : "") << quoted(cells[i]);
    text_ << '\n';
  }
  std::string str() const { return text_.str(); }

 private:
  std::size_t cols_;
  std::ostringstream text_;
};

std::string point_text(const Point& p, int dim) {
  return dim == 1 ? num(p[0]) : num(p[0]) + " " + num(p[1]);
}

struct Globals {
  double grid_h = 0;
  double grid_extent = 0;
  int dim = 1;
  std::string out;
  std::uint64_t seed = 1;

  GridSpec grid() const {
    GridSpec g = default_grid(dim);
    if (grid_h > 0) g.h = grid_h;
    if (grid_extent > 0) g.extent = grid_extent;
    g.validate();
    return g;
  }
};

// Writes the CSV (to --out or stdout) and, with --out, a JSON summary next
// to it carrying the wall time.
void emit(const Globals& gl, const Csv& csv, nlohmann::json summary, double seconds, std::ostream& out) {
  if (gl.out.empty()) {
    out << csv.str();
    return;
  }
  std::filesystem::path p(gl.out);
  std::filesystem::path sp = p;
  sp.replace_extension(p.extension() == ".json" ? ".summary.json" : ".json");
  summary["wall_time_s"] = seconds;
  summary["csv"] = p.string();
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + p.string() + "'");
  f << csv.str();
  std::ofstream s(sp, std::ios::binary);
  if (!s) throw ConfigError("cannot write '" + sp.string() + "'");
  s << summary.dump(2) << '\n';
}

SampledFunction load_input(const std::string& text, const GridSpec& base) {
  const nlohmann::json j = config::load(text);
  if (j.is_object() && j.contains("formula")) {
    const GridSpec g = j.contains("grid") ? config::grid(j.at("grid"), base) : base;
    return sample_function(g, j.at("formula"));
  }
  return sample_function(base, j);
}

std::optional<Ball> parse_ball(const std::string& text, int dim) {
  if (text.empty()) return std::nullopt;
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("ball must be 'x[,y]:r'");
  const std::vector<double> c = config::number_list(text.substr(0, colon));
  if (static_cast<int>(c.size()) != dim) throw ConfigError("ball center must have one entry per dimension");
  Ball b;
  b.center = {c[0], dim == 2 ? c[1] : 0.0};
  b.radius = config::number_list(text.substr(colon + 1)).at(0);
  if (!(b.radius > 0.0)) throw DomainError("ball radius must be positive");
  return b;
}

// A ball is resolved when it holds a cell center and its center is on the grid.
void require_representable(const Ball& b, const GridSpec& g) {
  for (int a = 0; a < g.dim; ++a) {
    if (std::abs(b.center[static_cast<std::size_t>(a)]) > g.extent) {
      throw UnrepresentableBall("ball center lies outside the grid domain");
    }
  }
  if (lattice_ball_measure(g, b) == 0.0) throw UnrepresentableBall("ball contains no cell center");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"olab: Orlicz and Orlicz-Morrey norms, fractional operators and growth conditions"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals gl;
  app.add_option("--grid-h", gl.grid_h, "grid spacing h");
  app.add_option("--grid-extent", gl.grid_extent, "grid half-extent L");
  app.add_option("--dim", gl.dim, "dimension (1 or 2)");
  app.add_option("--out", gl.out, "CSV output path; a JSON summary is written next to it");
  app.add_option("--seed", gl.seed, "seed for the random family");

  // norm
  auto* norm = app.add_subcommand("norm", "Orlicz, weak Orlicz and Orlicz-Morrey norms of a sampled function");
  std::string n_input, n_young, n_growth, n_kind = "orlicz", n_ball, n_sampling;
  norm->add_option("--input", n_input, "formula config (inline JSON or path)")->required();
  norm->add_option("--young", n_young, "Young function config")->required();
  norm->add_option("--kind", n_kind, "orlicz | weak | morrey | weak-morrey");
  norm->add_option("--growth", n_growth, "growth function config (Morrey kinds)");
  norm->add_option("--ball", n_ball, "restrict to the ball 'x[,y]:r' (Orlicz kinds)");
  norm->add_option("--sampling", n_sampling, "Morrey sampling config");

  // operators
  auto* ops = app.add_subcommand("operators", "fractional maximal function or Riesz potential on the grid");
  std::string o_input, o_operator = "maximal";
  double o_alpha = 0.0;
  bool o_centered = true;
  ops->add_option("--input", o_input, "formula config")->required();
  ops->add_option("--alpha", o_alpha, "order alpha");
  ops->add_option("--operator", o_operator, "maximal | riesz");
  ops->add_flag("--centered,!--uncentered", o_centered, "centered (default) or uncentered balls");

  // check
  auto* check = app.add_subcommand("check", "best constants of a growth condition across truncation levels");
  std::string c_condition, c_setup, c_range, c_schedule;
  check->add_option("--condition", c_condition, "condition kind, or omega / g_phi for class membership")->required();
  check->add_option("--setup", c_setup, "setup config")->required();
  check->add_option("--range", c_range, "t grid tmin:tmax:per_octave");
  check->add_option("--rmax-schedule", c_schedule, "comma-separated truncation levels");

  // adams
  auto* adams = app.add_subcommand("adams", "empirical operator norms over a test family");
  std::string a_setup, a_family = "indicators", a_target = "strong", a_operator = "maximal", a_sampling, a_t0;
  std::size_t a_count = 10;
  adams->add_option("--setup", a_setup, "setup config")->required();
  adams->add_option("--family", a_family, "indicators | power-decay | random | witness");
  adams->add_option("--t0", a_t0, "radii for the witness table (default 2^-4 .. 2^4)");
  adams->add_option("--target", a_target, "strong | weak");
  adams->add_option("--operator", a_operator, "maximal | riesz");
  adams->add_option("--count", a_count, "members of the random family");
  adams->add_option("--sampling", a_sampling, "Morrey sampling config");

  // probe
  auto* probe = app.add_subcommand("probe", "triviality probe on the indicator of B(0, 1)");
  std::string p_young, p_growth, p_sampling;
  double p_lambda = 0.0;
  probe->add_option("--young", p_young, "Young function config")->required();
  auto* p_growth_opt = probe->add_option("--growth", p_growth, "growth function config");
  auto* p_lambda_opt = probe->add_option("--lambda", p_lambda, "use the lambda-flavored growth function");
  p_growth_opt->excludes(p_lambda_opt);
  probe->add_option("--sampling", p_sampling, "Morrey sampling config");

  // classify
  auto* classify = app.add_subcommand("classify", "growth classes of a Young function");
  std::string k_young, k_class = "all", k_range;
  classify->add_option("--young", k_young, "Young function config")->required();
  classify->add_option("--class", k_class, "delta2 | nabla2 | delta_prime | all");
  classify->add_option("--range", k_range, "t grid tmin:tmax:per_octave");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const auto start = std::chrono::steady_clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  try {
    if (gl.dim != 1 && gl.dim != 2) throw DomainError("dimension must be 1 or 2");

    if (*norm) {
      const GridSpec g = gl.grid();
      const SampledFunction f = load_input(n_input, g);
      const YoungFunction phi = config::young(config::load(n_young));
      NormEvaluation ev;
      std::string growth_text;
      if (n_kind == "orlicz" || n_kind == "weak") {
        const auto ball = parse_ball(n_ball, f.grid().dim);
        if (ball) require_representable(*ball, f.grid());
        ev = n_kind == "orlicz" ? luxemburg_norm(f, phi, ball) : weak_orlicz_norm(f, phi, ball);
      } else if (n_kind == "morrey" || n_kind == "weak-morrey") {
        if (n_growth.empty()) throw ConfigError("Morrey norms need --growth");
        const GrowthFunction varphi = config::growth(config::load(n_growth), phi, f.grid().dim);
        growth_text = varphi.to_json().dump();
        const MorreySampling s = n_sampling.empty() ? MorreySampling{} : config::sampling(config::load(n_sampling));
        ev = generalized_orlicz_morrey_norm(f, phi, varphi, n_kind == "weak-morrey", s);
      } else {
        throw ConfigError("unknown norm kind '" + n_kind + "'");
      }
      Csv csv({"kind", "young", "growth", "value", "witness_center", "witness_radius"});
      csv.row({std::string(to_string(ev.kind)), phi.describe(), growth_text, num(ev.value),
               ev.witness ? point_text(ev.witness->center, f.grid().dim) : "",
               ev.witness ? num(ev.witness->radius) : ""});
      out << num(ev.value) << '\n';
      if (!gl.out.empty()) {
        nlohmann::json sum{{"command", "norm"}, {"kind", to_string(ev.kind)}, {"young", phi.to_json()},
                           {"value", json_num(ev.value)}};
        if (ev.truncation) sum["truncation"] = ev.truncation->centers;
        emit(gl, csv, sum, elapsed(), out);
      }
      return 0;
    }

    if (*ops) {
      const GridSpec g = gl.grid();
      const SampledFunction f = load_input(o_input, g);
      SampledFunction r;
      if (o_operator == "maximal") {
        OperatorSpec spec;
        spec.alpha = o_alpha;
        spec.centered = o_centered;
        r = maximal(f, spec);
      } else if (o_operator == "riesz") {
        r = riesz_potential(f, o_alpha);
      } else {
        throw ConfigError("unknown operator '" + o_operator + "'");
      }
      const int dim = r.grid().dim;
      Csv csv(dim == 1 ? std::vector<std::string>{"index", "x", "value"}
                       : std::vector<std::string>{"index", "x", "y", "value"});
      for (std::size_t k = 0; k < r.size(); ++k) {
        const Point p = r.grid().point(k);
        if (dim == 1) {
          csv.row({std::to_string(k), num(p[0]), num(r[k])});
        } else {
          csv.row({std::to_string(k), num(p[0]), num(p[1]), num(r[k])});
        }
      }
      nlohmann::json sum{{"command", "operators"}, {"operator", o_operator}, {"alpha", o_alpha},
                         {"centered", o_centered}, {"max_value", json_num(r.max_value())}};
      emit(gl, csv, sum, elapsed(), out);
      return 0;
    }

    if (*check) {
      const AdamsSetup s = config::setup(config::load(c_setup));
      const LogGrid range = c_range.empty() ? default_condition_range() : config::range(c_range);
      const std::vector<double> schedule = c_schedule.empty() ? default_rmax_schedule() : config::number_list(c_schedule);
      ConditionReport rep;
      if (c_condition == "omega" || c_condition == "g_phi") {
        const auto cls = c_condition == "omega" ? MembershipClass::omega : MembershipClass::g_phi;
        rep = check_membership(s.varphi, s.phi, cls, range, schedule, s.dim);
      } else {
        rep = check_condition(parse_condition(c_condition), s, range, schedule);
      }
      const std::string young = s.phi.describe();
      const std::string growth = s.varphi.to_json().dump();
      Csv csv({"condition", "alpha", "beta", "dim", "young", "growth", "range", "R_max", "t_witness", "C", "verdict"});
      for (const auto& st : rep.steps) {
        csv.row({rep.condition, num(s.alpha), num(s.beta), std::to_string(s.dim), young, growth, rep.range,
                 num(st.level), num(st.witness), num(st.constant), std::string(to_string(rep.verdict))});
      }
      nlohmann::json sum{{"command", "check"}, {"condition", rep.condition}, {"verdict", to_string(rep.verdict)},
                         {"final_constant", json_num(rep.final_constant())}, {"range", rep.range},
                         {"witness", rep.steps.empty() ? nlohmann::json() : json_num(rep.steps.back().witness)}};
      emit(gl, csv, sum, elapsed(), out);
      return 0;
    }

    if (*adams) {
      const AdamsSetup s = config::setup(config::load(a_setup));
      Globals on_setup = gl;
      on_setup.dim = s.dim;
      const GridSpec g = on_setup.grid();
      const MorreySampling sampling = a_sampling.empty() ? MorreySampling{} : config::sampling(config::load(a_sampling));
      if (a_family == "witness") {
        std::vector<double> t0;
        if (a_t0.empty()) {
          for (int k = -4; k <= 4; ++k) t0.push_back(std::ldexp(1.0, k));
        } else {
          t0 = config::number_list(a_t0);
        }
        const WitnessTable table = necessity_witness(s, t0, g, sampling);
        Csv csv({"t0", "alpha", "beta", "young", "growth", "lower_bound", "measured", "K"});
        for (const auto& r : table.rows) {
          csv.row({num(r.t0), num(s.alpha), num(s.beta), s.phi.describe(), s.varphi.to_json().dump(),
                   num(r.lower_bound), num(r.measured), num(table.k)});
        }
        emit(gl, csv, {{"command", "adams"}, {"family", "witness"}, {"K", json_num(table.k)}}, elapsed(), out);
        return 0;
      }
      std::vector<FamilyMember> family;
      if (a_family == "indicators") {
        family = indicator_family(g);
      } else if (a_family == "power-decay") {
        family = power_decay_family(g);
      } else if (a_family == "random") {
        family = random_family(g, a_count, gl.seed);
      } else {
        throw ConfigError("unknown family '" + a_family + "'");
      }
      if (a_target != "strong" && a_target != "weak") throw ConfigError("target must be strong or weak");
      if (a_operator != "maximal" && a_operator != "riesz") throw ConfigError("operator must be maximal or riesz");
      const auto rows = estimate_operator_norm(s, a_operator == "riesz" ? OperatorKind::riesz : OperatorKind::fractional_maximal,
                                               a_target == "weak" ? Target::weak : Target::strong, family, sampling);
      Csv csv({"test_id", "operator", "target", "alpha", "beta", "young", "growth", "source_norm", "target_norm", "ratio",
               "witness_center", "witness_radius", "notice"});
      double lo = kInfinity, hi = 0.0;
      for (const auto& r : rows) {
        csv.row({r.id, a_operator, a_target, num(s.alpha), num(s.beta), s.phi.describe(), s.varphi.to_json().dump(),
                 num(r.source), num(r.target), r.skipped ? "" : num(r.ratio),
                 r.witness ? point_text(r.witness->center, s.dim) : "", r.witness ? num(r.witness->radius) : "",
                 r.notice});
        if (!r.skipped) lo = std::min(lo, r.ratio), hi = std::max(hi, r.ratio);
        if (r.skipped) err << "notice: " << r.id << ": " << r.notice << '\n';
      }
      nlohmann::json sum{{"command", "adams"}, {"family", a_family}, {"target", a_target}, {"operator", a_operator},
                         {"max_ratio", json_num(hi)}, {"min_ratio", json_num(lo)}, {"seed", gl.seed}};
      emit(gl, csv, sum, elapsed(), out);
      return 0;
    }

    if (*probe) {
      const GridSpec g = gl.grid();
      const YoungFunction phi = config::young(config::load(p_young));
      std::optional<GrowthFunction> varphi;
      if (!p_growth.empty()) {
        varphi = config::growth(config::load(p_growth), phi, g.dim);
      } else if (p_lambda_opt->count() > 0) {
        varphi = growth_from_lambda(phi, p_lambda, g.dim);
      } else {
        throw ConfigError("probe needs --growth or --lambda");
      }
      const MorreySampling s = p_sampling.empty() ? MorreySampling{} : config::sampling(config::load(p_sampling));
      const ConditionReport rep = triviality_probe(phi, *varphi, g, s);
      Csv csv({"direction", "level", "norm", "witness_radius", "young", "growth", "verdict"});
      for (const auto& st : rep.steps) {
        csv.row({st.label, num(st.level), num(st.constant), num(st.witness), phi.describe(), varphi->to_json().dump(),
                 std::string(to_string(rep.verdict))});
      }
      nlohmann::json sum{{"command", "probe"}, {"verdict", to_string(rep.verdict)}, {"sampling", rep.range}};
      emit(gl, csv, sum, elapsed(), out);
      return 0;
    }

    if (*classify) {
      const YoungFunction phi = config::young(config::load(k_young));
      const LogGrid range = k_range.empty() ? LogGrid{} : config::range(k_range);
      std::vector<GrowthClass> classes;
      if (k_class == "all") {
        classes = {GrowthClass::delta2, GrowthClass::nabla2, GrowthClass::delta_prime};
      } else if (k_class == "delta2") {
        classes = {GrowthClass::delta2};
      } else if (k_class == "nabla2") {
        classes = {GrowthClass::nabla2};
      } else if (k_class == "delta_prime") {
        classes = {GrowthClass::delta_prime};
      } else {
        throw ConfigError("unknown class '" + k_class + "'");
      }
      Csv csv({"class", "young", "window_max", "C", "witness", "verdict"});
      nlohmann::json verdicts = nlohmann::json::object();
      for (GrowthClass c : classes) {
        const ConditionReport rep = classify_growth(phi, c, range);
        for (const auto& st : rep.steps) {
          csv.row({rep.condition, phi.describe(), num(st.level), num(st.constant), num(st.witness),
                   std::string(to_string(rep.verdict))});
        }
        verdicts[rep.condition] = to_string(rep.verdict);
      }
      emit(gl, csv, {{"command", "classify"}, {"young", phi.to_json()}, {"verdicts", verdicts}}, elapsed(), out);
      return 0;
    }
  } catch (const UnrepresentableBall& e) {
    err << "error: " << e.what() << '\n';
    return 4;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return 3;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace olab
