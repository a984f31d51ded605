#include "qwmix/decoherence.hpp"

#include <fstream>

#include "qwmix/config.hpp"
#include "qwmix/error.hpp"
#include "qwmix/kernels.hpp"

namespace qwmix {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

std::vector<std::vector<std::size_t>> cluster_members(const CTWalk& walk) {
  std::vector<std::vector<std::size_t>> out;
  out.reserve(walk.clusters().size());
  for (const auto& c : walk.clusters()) out.push_back(c.members);
  return out;
}

}  // namespace

GeneratedChain generated_chain(const CTWalk& walk, const MeasurementRule& rule) {
  if (!rule.usable_in_continuous_time()) {
    throw InvalidParameter("rule", rule.to_string() + " cannot be paired with a continuous-time walk");
  }
  MatrixXd p;
  if (rule.family() == RuleFamily::Delta) {
    p = kernels::propagator_squared(walk.eigenvectors(), walk.eigenvalues(), rule.horizon());
  } else {
    const auto& clusters = walk.clusters();
    const auto m = static_cast<Index>(clusters.size());
    MatrixXd kernel(m, m);
    for (Index a = 0; a < m; ++a)
      for (Index b = 0; b < m; ++b)
        kernel(a, b) = rule.characteristic(clusters[static_cast<std::size_t>(a)].value -
                                           clusters[static_cast<std::size_t>(b)].value).real();
    p = kernels::clustered_generated(walk.eigenvectors(), cluster_members(walk), kernel);
  }
  return GeneratedChain{MarkovChain(std::move(p), "gen[ct," + walk.base_chain().label() + "," + rule.to_string() + "]"),
                        "ct", walk.base_chain().label(), rule, 0.0};
}

GeneratedChain generated_chain(const DTWalk& walk, const MeasurementRule& rule) {
  if (!rule.usable_in_discrete_time()) {
    throw InvalidParameter("rule", rule.to_string() + " cannot be paired with a discrete-time walk");
  }
  const auto w = rule.discrete_weights();
  MatrixXd p = kernels::dt_generated(walk.unitary(), walk.embedding(), walk.positions(), walk.base_size(), w.weights);
  const double trunc = 2.0 * w.tail_mass;
  return GeneratedChain{MarkovChain(std::move(p), "gen[" + walk.label() + "," + rule.to_string() + "]"),
                        to_string(walk.kind()), walk.label(), rule, trunc};
}

MatrixXd generated_matrix_reference(const CTWalk& walk, const MeasurementRule& rule) {
  if (!rule.usable_in_continuous_time()) {
    throw InvalidParameter("rule", rule.to_string() + " cannot be paired with a continuous-time walk");
  }
  return kernels::spectral_generated_reference(walk.eigenvectors(), walk.eigenvalues(),
                                               [&](double theta) { return rule.characteristic(theta); });
}

MarkovChain limit_chain(const CTWalk& walk) {
  const auto m = static_cast<Index>(walk.clusters().size());
  MatrixXd p = kernels::clustered_generated(walk.eigenvectors(), cluster_members(walk), MatrixXd::Identity(m, m));
  return MarkovChain(std::move(p), "Pi[" + walk.base_chain().label() + "]");
}

MixingTime repeated_mixing_time(const GeneratedChain& g, long horizon) {
  const auto& p = g.chain.matrix();
  const double row_dev = (p.rowwise().sum().array() - 1.0).abs().maxCoeff();
  if (row_dev > 1e-9 + g.truncation_error) {
    throw PreconditionViolated("repeated_mixing_time: generated chain " + g.chain.label() +
                               " is not doubly stochastic (row deviation " + std::to_string(row_dev) + ")");
  }
  const VectorXd u = VectorXd::Constant(p.rows(), 1.0 / static_cast<double>(p.rows()));
  const auto search = kernels::first_time_below(p, u, kMixingThreshold, horizon);
  kernels::check_monotone(search);
  return search.time ? MixingTime::at(*search.time, horizon) : MixingTime::no_mix(horizon);
}

MixingTime repeated_mixing_time(const GeneratedChain& g) {
  return repeated_mixing_time(g, default_horizon(g.chain.size()));
}

nlohmann::json provenance_json(const GeneratedChain& g) {
  return {{"walk_kind", g.walk_kind},
          {"base_label", g.base_label},
          {"rule_family", to_string(g.rule.family())},
          {"T", g.rule.horizon()},
          {"truncation_error", g.truncation_error}};
}

void write_generated_chain(const GeneratedChain& g, const std::filesystem::path& csv_path) {
  {
    std::ofstream csv(csv_path);
    if (!csv) throw Error("cannot write " + csv_path.string());
    write_chain_csv(g.chain, csv);
  }
  auto json_path = csv_path;
  json_path.replace_extension(".json");
  std::ofstream js(json_path);
  if (!js) throw Error("cannot write " + json_path.string());
  js << provenance_json(g).dump(2) << '\n';
}

}  // namespace qwmix
