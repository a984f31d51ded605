#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qwmix/graph.hpp"
#include "qwmix/markov_chain.hpp"

namespace qwmix {

/// Slack used by every experiment assertion: holds == (lhs <= rhs + 1e-12).
inline constexpr double kAssertionSlack = 1e-12;

struct Measurement {
  std::string label;
  /// +infinity encodes NoMix.
  double value = 0.0;
};

struct Assertion {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct ExperimentResult {
  std::string name;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  std::vector<Measurement> measurements;
  std::vector<Assertion> assertions;
  std::vector<std::string> artifacts;

  void measure(std::string label, double value);
  /// Records lhs <= rhs.
  const Assertion& check_le(std::string label, double lhs, double rhs);
  bool all_hold() const;
  std::size_t failures() const;
  const Measurement* find_measurement(const std::string& label) const;
  const Assertion* find_assertion(const std::string& label) const;

  nlohmann::ordered_json to_json() const;
  static ExperimentResult from_json(const nlohmann::json& j);
};

/// Least-squares slope of ln(y) against ln(x).
double log_log_slope(std::span<const double> x, std::span<const double> y);

// Golden ceilings, frozen from the first full runs of each audit.
inline constexpr long kCycleRepeatCeiling = 4;
inline constexpr long kHadamardRepeatCeiling = 4;
inline constexpr double kLatticeRepeatCeiling = 3.0;
inline constexpr double kEquivalenceConstant = 8.0;
inline constexpr double kHypercubeDeviationFloor = 0.2;

/// Uniform vs exponential measurement spectral gaps:
///   e^-1 gap_bar(T) <= gap_tilde(T) <= k (1 - e^-k) gap_bar(kT) + 2 e^-k.
ExperimentResult gap_inequality_audit(const MarkovChain& p, double T, std::span<const int> k_values);

/// Repeated mixing times under uniform and exponential measurement and the
/// two transfer bounds between them.
ExperimentResult measurement_equivalence_audit(const MarkovChain& p, double T);

enum class CycleWalk { ContinuousTime, Hadamard };

struct CycleAuditOptions {
  /// T = fraction * n/2 (ct) or fraction * n/sqrt(2) (hadamard).
  std::vector<double> t_fractions;
  /// Rule names; empty selects the defaults for the walk.
  std::vector<std::string> rules;
  long ceiling = 0;  // 0 selects the frozen ceiling for the walk
};

/// Repeated mixing of the cycle walks at T proportional to n.
ExperimentResult cycle_threshold_audit(int n, CycleWalk walk, const CycleAuditOptions& options = {});

/// Delta-rule chain on G^d against the d-th Kronecker power of the chain on G
/// at time t/d.
ExperimentResult tensor_power_identity_audit(const Graph& g, int d, std::span<const double> t_values);

/// Quantum repeated mixing on lattice(n,d) at T = nd/2 against the classical
/// (lazy for even n) walk, with fitted n-exponents.
ExperimentResult lattice_scaling_sweep(std::span<const int> n_values, std::span<const int> d_values);

struct GroverSweepOptions {
  /// Measurement horizon; 0 means T = N.
  long fixed_T = 0;
};

/// Szegedy walk on K_N with uniform_dt measurement.
ExperimentResult grover_complete_graph_sweep(std::span<const int> n_values, const GroverSweepOptions& options = {});

/// Deviation of the limit matrix from u 1^T on hypercubes and finiteness of the
/// repeated mixing time.
ExperimentResult hypercube_limit_audit(std::span<const int> d_values, double T = 100.0);

/// Builds a chain from {"graph": kind, "params": [...], "lazy": bool}.
MarkovChain chain_from_json(const nlohmann::json& spec);

/// Names accepted by run_experiment.
const std::vector<std::string>& experiment_names();
bool is_experiment(const std::string& name);
/// Short statement of the claim an experiment audits.
std::string experiment_claim(const std::string& name);

/// Checks a job's parameters without running it; throws InvalidParameter.
void validate_experiment_params(const std::string& name, const nlohmann::json& params);
/// Runs one job. `seed` is recorded in the parameters.
ExperimentResult run_experiment(const std::string& name, const nlohmann::json& params, std::uint64_t seed);

}  // namespace qwmix
