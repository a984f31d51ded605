#include "qwmix/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>

#include "qwmix/config.hpp"
#include "qwmix/decoherence.hpp"
#include "qwmix/error.hpp"
#include "qwmix/markov_analysis.hpp"
#include "qwmix/quantum_walks.hpp"

namespace qwmix {

using Eigen::Index;
using Eigen::MatrixXd;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double as_value(const MixingTime& m) { return m.mixed() ? static_cast<double>(*m.steps) : kInf; }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_from(const json& j) {
  if (j.is_null()) return kInf;
  return j.get<double>();
}

MatrixXd kron(const MatrixXd& a, const MatrixXd& b) {
  MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

MarkovChain lazy(const MarkovChain& p) {
  const auto n = static_cast<Index>(p.size());
  return MarkovChain(0.5 * (MatrixXd::Identity(n, n) + p.matrix()), "lazy(" + p.label() + ")");
}

// Slopes are fitted on finite points only; fewer than two gives NaN.
double finite_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> fx, fy;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (std::isfinite(y[i]) && y[i] > 0) {
      fx.push_back(x[i]);
      fy.push_back(y[i]);
    }
  if (fx.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  return log_log_slope(fx, fy);
}

}  // namespace

void ExperimentResult::measure(std::string label, double value) {
  measurements.push_back({std::move(label), value});
}

const Assertion& ExperimentResult::check_le(std::string label, double lhs, double rhs) {
  // NaN on either side never holds.
  const bool holds = lhs <= rhs + kAssertionSlack;
  assertions.push_back({std::move(label), lhs, rhs, holds});
  return assertions.back();
}

bool ExperimentResult::all_hold() const { return failures() == 0; }

std::size_t ExperimentResult::failures() const {
  return static_cast<std::size_t>(
      std::count_if(assertions.begin(), assertions.end(), [](const Assertion& a) { return !a.holds; }));
}

const Measurement* ExperimentResult::find_measurement(const std::string& label) const {
  for (const auto& m : measurements)
    if (m.label == label) return &m;
  return nullptr;
}

const Assertion* ExperimentResult::find_assertion(const std::string& label) const {
  for (const auto& a : assertions)
    if (a.label == label) return &a;
  return nullptr;
}

ojson ExperimentResult::to_json() const {
  ojson j;
  j["name"] = name;
  j["parameters"] = parameters;
  j["measurements"] = ojson::array();
  for (const auto& m : measurements) j["measurements"].push_back({{"label", m.label}, {"value", number_or_null(m.value)}});
  j["assertions"] = ojson::array();
  for (const auto& a : assertions)
    j["assertions"].push_back(
        {{"label", a.label}, {"lhs", number_or_null(a.lhs)}, {"rhs", number_or_null(a.rhs)}, {"holds", a.holds}});
  j["artifacts"] = artifacts;
  return j;
}

ExperimentResult ExperimentResult::from_json(const json& j) {
  ExperimentResult r;
  r.name = j.at("name").get<std::string>();
  r.parameters = ojson::parse(j.at("parameters").dump());
  for (const auto& m : j.at("measurements")) r.measurements.push_back({m.at("label").get<std::string>(), number_from(m.at("value"))});
  for (const auto& a : j.at("assertions"))
    r.assertions.push_back({a.at("label").get<std::string>(), number_from(a.at("lhs")), number_from(a.at("rhs")),
                            a.at("holds").get<bool>()});
  if (j.contains("artifacts")) r.artifacts = j.at("artifacts").get<std::vector<std::string>>();
  return r;
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidParameter("points", "slope needs at least two (x, y) pairs");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw InvalidParameter("points", "log-log fit needs positive values");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (den <= 0) throw InvalidParameter("points", "log-log fit needs distinct x values");
  return (n * sxy - sx * sy) / den;
}

ExperimentResult gap_inequality_audit(const MarkovChain& p, double T, std::span<const int> k_values) {
  if (!(T > 0)) throw InvalidParameter("T", "must be positive");
  ExperimentResult r;
  r.name = "gap_inequality_audit";
  r.parameters["chain"] = p.label();
  r.parameters["T"] = T;
  r.parameters["k"] = std::vector<int>(k_values.begin(), k_values.end());

  const CTWalk walk(p);
  const double gap_bar = spectral_gap(generated_chain(walk, MeasurementRule::uniform_ct(T)).chain);
  const double gap_tilde = spectral_gap(generated_chain(walk, MeasurementRule::exponential(T)).chain);
  r.measure("gap_uniform", gap_bar);
  r.measure("gap_exponential", gap_tilde);
  r.check_le("lower: e^-1 gap_uniform(T) <= gap_exponential(T)", std::exp(-1.0) * gap_bar, gap_tilde);
  for (int k : k_values) {
    if (k < 1) throw InvalidParameter("k", "must be >= 1");
    const double kk = k;
    const double gap_bar_k = spectral_gap(generated_chain(walk, MeasurementRule::uniform_ct(kk * T)).chain);
    r.measure("gap_uniform_k" + std::to_string(k), gap_bar_k);
    r.check_le("upper k=" + std::to_string(k), gap_tilde, kk * (1.0 - std::exp(-kk)) * gap_bar_k + 2.0 * std::exp(-kk));
  }
  return r;
}

ExperimentResult measurement_equivalence_audit(const MarkovChain& p, double T) {
  if (!(T > 0)) throw InvalidParameter("T", "must be positive");
  ExperimentResult r;
  r.name = "measurement_equivalence_audit";
  r.parameters["chain"] = p.label();
  r.parameters["T"] = T;

  const CTWalk walk(p);
  const double log_n = 1.0 + std::log(static_cast<double>(p.size()));
  const auto g_bar = generated_chain(walk, MeasurementRule::uniform_ct(T));
  const auto g_tilde = generated_chain(walk, MeasurementRule::exponential(T));
  const double t_bar = as_value(repeated_mixing_time(g_bar));
  const double t_tilde = as_value(repeated_mixing_time(g_tilde));
  r.measure("repeat_uniform", t_bar);
  r.measure("repeat_exponential", t_tilde);
  if (!std::isfinite(t_bar) || !std::isfinite(t_tilde)) r.measure("inconclusive_nomix", 1.0);

  r.check_le("exponential <= C T'_uniform (1 + ln N)", t_tilde, kEquivalenceConstant * t_bar * log_n);
  if (std::isfinite(t_bar)) r.measure("constant_a", t_tilde / (t_bar * log_n));

  const double gap_tilde = spectral_gap(g_tilde.chain);
  r.measure("gap_exponential", gap_tilde);
  // Smallest k >= 1 with gap >= 3 e^-k.
  const int k = gap_tilde > 0 ? std::max(1, static_cast<int>(std::ceil(std::log(3.0 / gap_tilde) - 1e-12))) : 0;
  if (k == 0) {
    r.measure("inconclusive_zero_gap", 1.0);
    r.check_le("uniform(kT) <= C' T'_exp (1 + ln T'_exp)(1 + ln N)", kInf, 0.0);
    return r;
  }
  r.measure("k", k);
  const double t_bar_k = as_value(repeated_mixing_time(generated_chain(walk, MeasurementRule::uniform_ct(k * T))));
  r.measure("repeat_uniform_kT", t_bar_k);
  const double rhs_b = std::isfinite(t_tilde) ? kEquivalenceConstant * t_tilde * (1.0 + std::log(t_tilde)) * log_n : kInf;
  r.check_le("uniform(kT) <= C' T'_exp (1 + ln T'_exp)(1 + ln N)", t_bar_k, rhs_b);
  if (std::isfinite(t_bar_k) && std::isfinite(t_tilde))
    r.measure("constant_b", t_bar_k / (t_tilde * (1.0 + std::log(t_tilde)) * log_n));
  return r;
}

ExperimentResult cycle_threshold_audit(int n, CycleWalk walk_kind, const CycleAuditOptions& options) {
  if (n < 3) throw InvalidParameter("n", "cycle audit needs n >= 3");
  const bool ct = walk_kind == CycleWalk::ContinuousTime;
  std::vector<double> fractions = options.t_fractions;
  if (fractions.empty()) fractions = ct ? std::vector<double>{2.0 / 3.0, 5.0 / 6.0, 1.0} : std::vector<double>{2.0 / 3.0, 1.0};
  std::vector<std::string> rules = options.rules;
  if (rules.empty()) rules = ct ? std::vector<std::string>{"delta", "uniform_ct", "exponential"}
                                : std::vector<std::string>{"uniform_dt", "geometric"};
  const long ceiling = options.ceiling > 0 ? options.ceiling : (ct ? kCycleRepeatCeiling : kHadamardRepeatCeiling);

  ExperimentResult r;
  r.name = "cycle_threshold_audit";
  r.parameters["n"] = n;
  r.parameters["walk"] = ct ? "ct" : "hadamard";
  r.parameters["t_fractions"] = fractions;
  r.parameters["rules"] = rules;
  r.parameters["ceiling"] = ceiling;

  const double scale = ct ? n / 2.0 : n / std::sqrt(2.0);
  std::optional<CTWalk> cwalk;
  std::optional<DTWalk> dwalk;
  if (ct)
    cwalk.emplace(standard_chain(cycle_graph(n)));
  else
    dwalk.emplace(hadamard_cycle(n));

  for (double f : fractions) {
    if (!(f > 0)) throw InvalidParameter("t_fractions", "must be positive");
    const double t_real = f * scale;
    for (const auto& name : rules) {
      const auto family = parse_rule_family(name);
      double t = t_real;
      if (family == RuleFamily::UniformDT || (!ct && family == RuleFamily::Delta)) t = std::max(1.0, std::round(t_real));
      const auto rule = MeasurementRule::make(family, t);
      const auto g = ct ? generated_chain(*cwalk, rule) : generated_chain(*dwalk, rule);
      const double tp = as_value(repeated_mixing_time(g));
      const std::string tag = rule.to_string();
      r.measure("repeat " + tag, tp);
      r.check_le("repeat " + tag + " <= ceiling", tp, static_cast<double>(ceiling));
    }
  }

  if (!ct && n % 2 == 0) {
    // Position parity after T coined steps on an even cycle is T mod 2.
    const long t = std::max(1L, std::lround(scale));
    const auto g = generated_chain(*dwalk, MeasurementRule::delta(static_cast<double>(t)));
    double wrong = 0.0;
    for (int y = 0; y < n; ++y)
      if ((y + t) % 2 != 0) wrong += g.chain(static_cast<std::size_t>(y), 0);
    r.measure("parity_leak delta(T=" + std::to_string(t) + ")", wrong);
    r.check_le("parity_leak <= 1e-12", wrong, 1e-12);
  }
  return r;
}

ExperimentResult tensor_power_identity_audit(const Graph& g, int d, std::span<const double> t_values) {
  if (d < 1) throw InvalidParameter("d", "must be >= 1");
  if (!g.is_regular()) throw PreconditionViolated("tensor_power_identity_audit: " + g.label() + " is not regular");
  ExperimentResult r;
  r.name = "tensor_power_identity_audit";
  r.parameters["graph"] = g.label();
  r.parameters["d"] = d;
  r.parameters["t"] = std::vector<double>(t_values.begin(), t_values.end());

  const Graph gd = cartesian_power(g, d);
  check_cap(gd.vertex_count(), std::min<std::size_t>(state_cap(), 4096));
  const CTWalk big(standard_chain(gd));
  const CTWalk small(standard_chain(g));
  for (double t : t_values) {
    if (!(t >= 0)) throw InvalidParameter("t", "must be >= 0");
    const MatrixXd lhs = generated_chain(big, MeasurementRule::delta(t)).chain.matrix();
    const MatrixXd one = generated_chain(small, MeasurementRule::delta(t / d)).chain.matrix();
    MatrixXd rhs = one;
    for (int j = 1; j < d; ++j) rhs = kron(rhs, one);
    const double diff = (lhs - rhs).cwiseAbs().maxCoeff();
    r.measure("max_abs_diff t=" + fmt(t), diff);
    r.check_le("identity t=" + fmt(t), diff, 1e-9);
  }
  return r;
}

ExperimentResult lattice_scaling_sweep(std::span<const int> n_values, std::span<const int> d_values) {
  ExperimentResult r;
  r.name = "lattice_scaling_sweep";
  r.parameters["n"] = std::vector<int>(n_values.begin(), n_values.end());
  r.parameters["d"] = std::vector<int>(d_values.begin(), d_values.end());
  const std::vector<std::string> rules{"delta", "uniform_ct"};

  // repeat[rule][d][n], classical[d][n]
  std::map<std::string, std::map<int, std::map<int, double>>> repeat;
  std::map<int, std::map<int, double>> classical;
  for (int d : d_values) {
    for (int n : n_values) {
      const Graph g = lattice_graph(n, d);
      const MarkovChain p = standard_chain(g);
      const std::string at = "(n=" + std::to_string(n) + ",d=" + std::to_string(d) + ")";
      const double T = n * d / 2.0;
      const CTWalk walk(p);
      for (const auto& name : rules) {
        const auto rule = MeasurementRule::make(parse_rule_family(name), T);
        const double tp = as_value(repeated_mixing_time(generated_chain(walk, rule)));
        repeat[name][d][n] = tp;
        r.measure("repeat " + name + at, tp);
        r.measure("cost " + name + at, T * tp);
        r.check_le("repeat " + name + at + " <= C (1 + ln d)", tp, kLatticeRepeatCeiling * (1.0 + std::log(d)));
      }
      const MarkovChain pc = n % 2 == 0 ? lazy(p) : p;
      const double tau = as_value(mixing_time(pc, default_horizon(pc.size())));
      classical[d][n] = tau;
      r.measure("classical" + at, tau);
    }
  }

  for (int d : d_values) {
    if (n_values.size() < 4) break;
    std::vector<double> xs, cls;
    for (int n : n_values) {
      xs.push_back(n);
      cls.push_back(classical[d][n]);
    }
    const std::string at = "(d=" + std::to_string(d) + ")";
    const double cs = finite_slope(xs, cls);
    r.measure("classical_slope" + at, cs);
    r.check_le("classical_slope" + at + " >= 1.8", 1.8, cs);
    for (const auto& name : rules) {
      std::vector<double> cost;
      for (int n : n_values) cost.push_back(repeat[name][d][n] * n * d / 2.0);
      const double qs = finite_slope(xs, cost);
      r.measure("cost_slope " + name + at, qs);
      r.check_le("cost_slope " + name + at + " <= 1.2", qs, 1.2);
    }
  }

  if (d_values.size() >= 2) {
    for (int n : n_values)
      for (const auto& name : rules)
        for (std::size_t i = 1; i < d_values.size(); ++i) {
          const double step = repeat[name][d_values[i]][n] - repeat[name][d_values[i - 1]][n];
          r.check_le("d_step " + name + "(n=" + std::to_string(n) + ",d=" + std::to_string(d_values[i - 1]) + "->" +
                         std::to_string(d_values[i]) + ") <= 2",
                     step, 2.0);
        }
  }
  return r;
}

ExperimentResult grover_complete_graph_sweep(std::span<const int> n_values, const GroverSweepOptions& options) {
  ExperimentResult r;
  r.name = "grover_complete_graph_sweep";
  r.parameters["N"] = std::vector<int>(n_values.begin(), n_values.end());
  r.parameters["T"] = options.fixed_T > 0 ? json(options.fixed_T) : json("N");

  std::vector<double> xs, ys;
  for (int n : n_values) {
    const MarkovChain p = standard_chain(complete_graph(n));
    const std::string at = "(N=" + std::to_string(n) + ")";
    const long T = options.fixed_T > 0 ? options.fixed_T : n;
    const auto g = generated_chain(quantize_szegedy(p), MeasurementRule::uniform_dt(T));
    const double tp = as_value(repeated_mixing_time(g));
    r.measure("repeat" + at, tp);
    const double tau = as_value(mixing_time(p, default_horizon(p.size())));
    r.measure("classical" + at, tau);
    // K_2 is bipartite, so only N >= 3 is expected to mix classically.
    if (n >= 3) {
      r.check_le("classical" + at + " <= 2", tau, 2.0);
      xs.push_back(n);
      ys.push_back(tp);
    }
  }
  if (xs.size() >= 4) {
    const double s = finite_slope(xs, ys);
    r.measure("repeat_slope", s);
    r.check_le("repeat_slope >= 0.8", 0.8, s);
    r.check_le("repeat_slope <= 1.2", s, 1.2);
  }
  return r;
}

ExperimentResult hypercube_limit_audit(std::span<const int> d_values, double T) {
  ExperimentResult r;
  r.name = "hypercube_limit_audit";
  r.parameters["d"] = std::vector<int>(d_values.begin(), d_values.end());
  r.parameters["T"] = T;
  for (int d : d_values) {
    const MarkovChain p = standard_chain(hypercube_graph(d));
    const CTWalk walk(p);
    const MarkovChain pi = limit_chain(walk);
    const auto n = static_cast<Index>(p.size());
    const double dev = distance_to_stationary(pi.matrix(), Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n)));
    const std::string at = "(d=" + std::to_string(d) + ")";
    r.measure("limit_deviation" + at, dev);
    // Q_1 = K_2 has a simple spectrum, so its limit matrix is exactly u 1^T.
    if (d >= 2) r.check_le("limit_deviation" + at + " > floor", kHypercubeDeviationFloor, dev);
    const auto g = generated_chain(walk, MeasurementRule::exponential(T));
    const long horizon = default_horizon(p.size());
    const double tp = as_value(repeated_mixing_time(g, horizon));
    r.measure("repeat exponential" + at, tp);
    r.check_le("repeat exponential" + at + " finite", tp, static_cast<double>(horizon));
  }
  return r;
}

// ---------------------------------------------------------------------------
// JSON registry

namespace {

class Params {
 public:
  Params(const json& j, std::initializer_list<const char*> allowed) : j_(j) {
    if (!j.is_object()) throw InvalidParameter("params", "must be a JSON object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    ok.insert("seed");
    for (auto it = j.begin(); it != j.end(); ++it)
      if (!ok.count(it.key())) throw InvalidParameter(it.key(), "unknown parameter");
  }

  bool has(const char* key) const { return j_.contains(key); }
  const json& raw(const char* key) const {
    if (!j_.contains(key)) throw InvalidParameter(key, "missing");
    return j_.at(key);
  }
  int integer(const char* key) const {
    const auto& v = raw(key);
    if (!v.is_number_integer()) throw InvalidParameter(key, "must be an integer");
    return v.get<int>();
  }
  double number(const char* key) const {
    const auto& v = raw(key);
    if (!v.is_number()) throw InvalidParameter(key, "must be a number");
    return v.get<double>();
  }
  std::string text(const char* key) const {
    const auto& v = raw(key);
    if (!v.is_string()) throw InvalidParameter(key, "must be a string");
    return v.get<std::string>();
  }
  // Accepts a scalar or an array.
  std::vector<int> integers(const char* key) const {
    const auto& v = raw(key);
    std::vector<int> out;
    if (v.is_number_integer()) return {v.get<int>()};
    if (!v.is_array()) throw InvalidParameter(key, "must be an integer or an array of integers");
    for (const auto& e : v) {
      if (!e.is_number_integer()) throw InvalidParameter(key, "must contain integers");
      out.push_back(e.get<int>());
    }
    if (out.empty()) throw InvalidParameter(key, "must not be empty");
    return out;
  }
  std::vector<double> numbers(const char* key) const {
    const auto& v = raw(key);
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_array()) throw InvalidParameter(key, "must be a number or an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw InvalidParameter(key, "must contain numbers");
      out.push_back(e.get<double>());
    }
    if (out.empty()) throw InvalidParameter(key, "must not be empty");
    return out;
  }
  std::vector<std::string> strings(const char* key) const {
    const auto& v = raw(key);
    if (v.is_string()) return {v.get<std::string>()};
    if (!v.is_array()) throw InvalidParameter(key, "must be a string or an array of strings");
    std::vector<std::string> out;
    for (const auto& e : v) {
      if (!e.is_string()) throw InvalidParameter(key, "must contain strings");
      out.push_back(e.get<std::string>());
    }
    return out;
  }

 private:
  const json& j_;
};

Graph graph_from_json(const json& desc) {
  Params p(desc, {"graph", "params", "lazy"});
  const auto kind = parse_graph_family(p.text("graph"));
  const auto params = p.integers("params");
  return build_graph(kind, params);
}

CycleWalk parse_cycle_walk(const std::string& s) {
  if (s == "ct") return CycleWalk::ContinuousTime;
  if (s == "hadamard") return CycleWalk::Hadamard;
  throw InvalidParameter("walk", "expected 'ct' or 'hadamard', got '" + s + "'");
}

using Runner = ExperimentResult (*)(const json&, bool dry_run);

ExperimentResult run_gap(const json& j, bool dry) {
  Params p(j, {"chain", "T", "k"});
  const auto chain = chain_from_json(p.raw("chain"));
  const double T = p.number("T");
  const auto k = p.has("k") ? p.integers("k") : std::vector<int>{1, 2, 3};
  if (dry) return {};
  return gap_inequality_audit(chain, T, k);
}

ExperimentResult run_equivalence(const json& j, bool dry) {
  Params p(j, {"chain", "T"});
  const auto chain = chain_from_json(p.raw("chain"));
  const double T = p.number("T");
  if (dry) return {};
  return measurement_equivalence_audit(chain, T);
}

ExperimentResult run_cycle(const json& j, bool dry) {
  Params p(j, {"n", "walk", "t_fractions", "rules", "ceiling"});
  const int n = p.integer("n");
  const auto walk = parse_cycle_walk(p.has("walk") ? p.text("walk") : "ct");
  CycleAuditOptions o;
  if (p.has("t_fractions")) o.t_fractions = p.numbers("t_fractions");
  if (p.has("rules"))
    for (const auto& s : p.strings("rules")) {
      parse_rule_family(s);
      o.rules.push_back(s);
    }
  if (p.has("ceiling")) o.ceiling = p.integer("ceiling");
  if (dry) return {};
  return cycle_threshold_audit(n, walk, o);
}

ExperimentResult run_tensor(const json& j, bool dry) {
  Params p(j, {"base", "d", "t"});
  const Graph g = graph_from_json(p.raw("base"));
  const int d = p.integer("d");
  const auto t = p.numbers("t");
  if (dry) return {};
  return tensor_power_identity_audit(g, d, t);
}

ExperimentResult run_lattice(const json& j, bool dry) {
  Params p(j, {"n", "d"});
  const auto n = p.integers("n");
  const auto d = p.integers("d");
  if (dry) return {};
  return lattice_scaling_sweep(n, d);
}

ExperimentResult run_grover(const json& j, bool dry) {
  Params p(j, {"N", "T"});
  const auto n = p.integers("N");
  GroverSweepOptions o;
  if (p.has("T")) {
    if (p.raw("T").is_string()) {
      if (p.text("T") != "N") throw InvalidParameter("T", "must be a positive integer or \"N\"");
    } else {
      o.fixed_T = p.integer("T");
      if (o.fixed_T < 1) throw InvalidParameter("T", "must be >= 1");
    }
  }
  if (dry) return {};
  return grover_complete_graph_sweep(n, o);
}

ExperimentResult run_hypercube(const json& j, bool dry) {
  Params p(j, {"d", "T"});
  const auto d = p.integers("d");
  const double T = p.has("T") ? p.number("T") : 100.0;
  if (dry) return {};
  return hypercube_limit_audit(d, T);
}

const std::vector<std::pair<std::string, std::pair<Runner, const char*>>>& registry() {
  static const std::vector<std::pair<std::string, std::pair<Runner, const char*>>> r{
      {"gap_inequality_audit", {run_gap, "exponential and uniform measurement gaps bound each other"}},
      {"measurement_equivalence_audit", {run_equivalence, "repeated mixing times transfer between measurement rules"}},
      {"cycle_threshold_audit", {run_cycle, "cycle walks mix repeatedly in O(1) rounds at T ~ n"}},
      {"tensor_power_identity_audit", {run_tensor, "delta-rule chain on G^d equals the Kronecker power at t/d"}},
      {"lattice_scaling_sweep", {run_lattice, "quantum cost ~ n vs classical ~ n^2 on lattices"}},
      {"grover_complete_graph_sweep", {run_grover, "Szegedy walk on K_N needs ~N rounds at T = N"}},
      {"hypercube_limit_audit", {run_hypercube, "hypercube limit matrix is far from uniform yet repeats mix"}},
  };
  return r;
}

Runner find_runner(const std::string& name) {
  for (const auto& [n, entry] : registry())
    if (n == name) return entry.first;
  throw InvalidParameter("experiment", "unknown experiment '" + name + "'");
}

}  // namespace

MarkovChain chain_from_json(const json& desc) {
  const Graph g = graph_from_json(desc);
  MarkovChain p = standard_chain(g);
  if (desc.contains("lazy")) {
    if (!desc.at("lazy").is_boolean()) throw InvalidParameter("lazy", "must be a boolean");
    if (desc.at("lazy").get<bool>()) return lazy(p);
  }
  return p;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : registry()) out.push_back(e.first);
    return out;
  }();
  return names;
}

bool is_experiment(const std::string& name) {
  const auto& n = experiment_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

std::string experiment_claim(const std::string& name) {
  for (const auto& [n, entry] : registry())
    if (n == name) return entry.second;
  throw InvalidParameter("experiment", "unknown experiment '" + name + "'");
}

void validate_experiment_params(const std::string& name, const json& params) { find_runner(name)(params, true); }

ExperimentResult run_experiment(const std::string& name, const json& params, std::uint64_t seed) {
  ExperimentResult r = find_runner(name)(params, false);
  r.parameters["input"] = ojson::parse(params.dump());
  r.parameters["seed"] = seed;
  return r;
}

}  // namespace qwmix
