#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qwmix/markov_chain.hpp"

namespace qwmix {

/// Strong connectivity and period of the support digraph (entries > 0).
struct SupportStructure {
  bool irreducible = false;
  /// gcd of cycle lengths; 0 when reducible.
  std::size_t period = 0;
  /// When reducible, a pair (from, to) with `to` unreachable from `from`.
  std::size_t unreachable_from = 0;
  std::size_t unreachable_to = 0;

  bool ergodic() const { return irreducible && period == 1; }
};

SupportStructure analyze_support(const Eigen::MatrixXd& p);

/// Unique pi with P pi = pi. Exactly uniform for symmetric P.
/// Throws ReducibleChain when the support digraph is not strongly connected.
Eigen::VectorXd stationary_distribution(const MarkovChain& p);

/// delta = 1 - || P restricted to pi-perp ||_2, computed from the symmetric
/// matrix D^-1 P D with the sqrt(pi) direction deflated. Exactly 0 for
/// periodic chains. Throws NonReversible.
double spectral_gap(const MarkovChain& p);

/// max over column pairs of 1/2 ||P(.,x) - P(.,x')||_1.
double pairwise_column_distance(const MarkovChain& p);

/// 1/2 ||M - pi 1^T||_1 with the matrix 1-norm (max absolute column sum).
double distance_to_stationary(const Eigen::MatrixXd& m, const Eigen::VectorXd& pi);

/// Threshold mixing time or NoMix(horizon).
struct MixingTime {
  std::optional<long> steps;
  long horizon = 0;

  bool mixed() const { return steps.has_value(); }
  static MixingTime no_mix(long horizon) { return {std::nullopt, horizon}; }
  static MixingTime at(long t, long horizon) { return {t, horizon}; }
  std::string to_string() const;
};

/// Smallest T <= horizon with 1/2 ||P^T - pi 1^T||_1 <= 1/(2e).
/// Throws ReducibleChain; returns NoMix when the threshold is never reached.
MixingTime mixing_time(const MarkovChain& p, long horizon);

/// ceil(log_{1/alpha} 2e); valid for 0 < alpha < 1.
long mixing_time_bound_from_distance(double alpha);

/// 1 - gamma (1 - 2 (1 - beta)) after checking that every column has at least
/// beta*N entries >= gamma/N. Throws PreconditionViolated naming the column.
double distance_bound_from_entries(const MarkovChain& p, double beta, double gamma);

/// Largest gamma such that every column has ceil(beta*N) entries >= gamma/N.
double entry_lower_bound_gamma(const MarkovChain& p, double beta);

inline constexpr std::size_t kConductanceMaxStates = 20;

/// min over S with pi(S) <= 1/2 of Q(S, S^c) / pi(S), Q(x,y) = pi_x P(y,x),
/// by exact subset enumeration. Throws PreconditionViolated for N > 20.
double conductance(const MarkovChain& p);

struct BoundCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  /// Set when the comparison could not be made (e.g. NoMix before the bound).
  bool inconclusive = false;
};

struct MixingReport {
  MixingTime tau_mix;
  double delta = 0.0;
  double d_of_p = 0.0;
  std::optional<double> phi;
  std::vector<BoundCheck> bound_checks;

  bool all_hold() const;
  const BoundCheck* find(const std::string& name) const;
};

/// Audits the classical inequalities on one chain: Aldous lower and upper
/// bounds, Cheeger (N <= 20) and the column-distance sandwich.
MixingReport verify_inequalities(const MarkovChain& p, long horizon);

/// Default NoMix horizon 10 N (1 + ln N).
long default_horizon(std::size_t n);

}  // namespace qwmix
