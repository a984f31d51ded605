#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>

#include "qwmix/markov_analysis.hpp"
#include "qwmix/markov_chain.hpp"
#include "qwmix/measurement.hpp"
#include "qwmix/quantum_walks.hpp"

#include <json.hpp>

namespace qwmix {

/// Classical chain P_T(y,x) = E_{t ~ rule} |<y|U^t|x>|^2 produced by a walk
/// and a measurement rule, with its provenance.
struct GeneratedChain {
  MarkovChain chain;
  std::string walk_kind;  // "ct" or the DTWalkKind name
  std::string base_label;
  MeasurementRule rule;
  /// Upper bound on the entrywise error from truncating the time distribution.
  double truncation_error = 0.0;
};

/// Continuous-time path: closed-form characteristic function over eigenvalue
/// clusters, no time integration. Accepts delta, uniform_ct and exponential.
GeneratedChain generated_chain(const CTWalk& walk, const MeasurementRule& rule);

/// Discrete-time path: explicit weighted sum over t of the projected
/// evolution. Accepts integer delta, uniform_dt and geometric.
GeneratedChain generated_chain(const DTWalk& walk, const MeasurementRule& rule);

/// Double sum over individual eigenpairs with the exact chi(lambda_k - lambda_l);
/// O(N^4), kept to cross-check the clustered path.
Eigen::MatrixXd generated_matrix_reference(const CTWalk& walk, const MeasurementRule& rule);

/// T -> infinity limit for smooth rules:
///   Pi(y,x) = sum_j |sum_{k in C_j} phi_k(y) phi_k(x)|^2
/// over the walk's eigenvalue clusters.
MarkovChain limit_chain(const CTWalk& walk);

/// Smallest T' with 1/2 ||P_T^{T'} - u 1^T||_1 <= 1/(2e), or NoMix(horizon).
/// Requires a doubly stochastic generated chain (rows sum to 1 within
/// 1e-9 + truncation error); throws PreconditionViolated otherwise.
MixingTime repeated_mixing_time(const GeneratedChain& g, long horizon);
/// Horizon defaults to 10 N (1 + ln N).
MixingTime repeated_mixing_time(const GeneratedChain& g);

/// {walk_kind, base_label, rule_family, T, truncation_error}.
nlohmann::json provenance_json(const GeneratedChain& g);

/// Chain CSV plus a JSON provenance sidecar at `csv_path` with extension ".json".
void write_generated_chain(const GeneratedChain& g, const std::filesystem::path& csv_path);

}  // namespace qwmix
