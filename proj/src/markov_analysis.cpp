#include "qwmix/markov_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "qwmix/config.hpp"
#include "qwmix/error.hpp"
#include "qwmix/kernels.hpp"

namespace qwmix {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// BFS over the support digraph; `reverse` walks edges backwards.
std::vector<long> bfs_levels(const MatrixXd& p, bool reverse) {
  const Index n = p.rows();
  std::vector<long> level(static_cast<std::size_t>(n), -1);
  std::queue<Index> q;
  level[0] = 0;
  q.push(0);
  while (!q.empty()) {
    const Index v = q.front();
    q.pop();
    for (Index w = 0; w < n; ++w) {
      const double e = reverse ? p(v, w) : p(w, v);
      if (e > 0.0 && level[static_cast<std::size_t>(w)] < 0) {
        level[static_cast<std::size_t>(w)] = level[static_cast<std::size_t>(v)] + 1;
        q.push(w);
      }
    }
  }
  return level;
}

constexpr double kDoublyStochasticTol = 1e-12;

}  // namespace

SupportStructure analyze_support(const MatrixXd& p) {
  SupportStructure s;
  const Index n = p.rows();
  const auto forward = bfs_levels(p, false);
  const auto backward = bfs_levels(p, true);
  for (Index v = 0; v < n; ++v) {
    if (forward[static_cast<std::size_t>(v)] < 0) {
      s.unreachable_from = 0;
      s.unreachable_to = static_cast<std::size_t>(v);
      return s;
    }
    if (backward[static_cast<std::size_t>(v)] < 0) {
      s.unreachable_from = static_cast<std::size_t>(v);
      s.unreachable_to = 0;
      return s;
    }
  }
  s.irreducible = true;
  long g = 0;
  for (Index u = 0; u < n; ++u)
    for (Index v = 0; v < n; ++v)
      if (p(v, u) > 0.0)
        g = std::gcd(g, std::abs(forward[static_cast<std::size_t>(u)] + 1 - forward[static_cast<std::size_t>(v)]));
  s.period = static_cast<std::size_t>(g);
  return s;
}

VectorXd stationary_distribution(const MarkovChain& chain) {
  const auto& p = chain.matrix();
  const Index n = p.rows();
  const auto structure = analyze_support(p);
  if (!structure.irreducible) throw ReducibleChain(structure.unreachable_from, structure.unreachable_to);

  const VectorXd row_sums = p.rowwise().sum();
  if ((row_sums.array() - 1.0).abs().maxCoeff() <= kDoublyStochasticTol) {
    return VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  }
  MatrixXd a = p - MatrixXd::Identity(n, n);
  a.row(n - 1).setOnes();
  VectorXd b = VectorXd::Zero(n);
  b(n - 1) = 1.0;
  VectorXd pi = a.fullPivLu().solve(b);
  pi = pi.cwiseMax(0.0);
  pi /= pi.sum();
  const double residual = (p * pi - pi).lpNorm<1>();
  if (residual > 1e-10) {
    throw Error("stationary_distribution: residual " + std::to_string(residual) + " exceeds 1e-10");
  }
  return pi;
}

double spectral_gap(const MarkovChain& chain) {
  const auto& p = chain.matrix();
  const Index n = p.rows();
  const auto structure = analyze_support(p);
  if (!structure.irreducible || structure.period > 1) return 0.0;
  if (n == 1) return 1.0;

  const VectorXd sqrt_pi = chain.stationary().cwiseSqrt();
  MatrixXd s = sqrt_pi.cwiseInverse().asDiagonal() * p * sqrt_pi.asDiagonal();
  const double asym = (s - s.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10) throw NonReversible(asym);
  s = 0.5 * (s + s.transpose());
  s.noalias() -= sqrt_pi * sqrt_pi.transpose();
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(s, Eigen::EigenvaluesOnly);
  const double top = eig.eigenvalues().cwiseAbs().maxCoeff();
  return std::clamp(1.0 - top, 0.0, 1.0);
}

double pairwise_column_distance(const MarkovChain& chain) {
  const auto& p = chain.matrix();
  const Index n = p.cols();
  VectorXd worst = VectorXd::Zero(n);
#pragma omp parallel for schedule(dynamic, 8) if (n > 64)
  for (Index x = 0; x < n; ++x) {
    double w = 0.0;
    for (Index x2 = x + 1; x2 < n; ++x2) w = std::max(w, 0.5 * (p.col(x) - p.col(x2)).cwiseAbs().sum());
    worst(x) = w;
  }
  return n ? worst.maxCoeff() : 0.0;
}

double distance_to_stationary(const MatrixXd& m, const VectorXd& pi) {
  return kernels::max_column_tv(m, pi);
}

std::string MixingTime::to_string() const {
  return steps ? std::to_string(*steps) : "NoMix(" + std::to_string(horizon) + ")";
}

MixingTime mixing_time(const MarkovChain& chain, long horizon) {
  if (horizon < 1) throw InvalidParameter("horizon", "must be >= 1");
  const auto structure = analyze_support(chain.matrix());
  if (!structure.irreducible) throw ReducibleChain(structure.unreachable_from, structure.unreachable_to);
  if (structure.period > 1) return MixingTime::no_mix(horizon);
  const auto search = kernels::first_time_below(chain.matrix(), chain.stationary(), kMixingThreshold, horizon);
  kernels::check_monotone(search);
  return search.time ? MixingTime::at(*search.time, horizon) : MixingTime::no_mix(horizon);
}

long mixing_time_bound_from_distance(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidParameter("alpha", "must lie in (0,1)");
  const double ratio = std::log(2.0 * std::numbers::e) / std::log(1.0 / alpha);
  // Absorb last-bit rounding so that alpha = 1/(2e) gives exactly 1.
  return static_cast<long>(std::ceil(ratio - 1e-12));
}

namespace {

std::size_t required_count(double beta, std::size_t n) {
  return static_cast<std::size_t>(std::ceil(beta * static_cast<double>(n) - 1e-12));
}

void check_beta_gamma(double beta, double gamma) {
  if (!(beta > 0.5 && beta <= 1.0)) throw InvalidParameter("beta", "must lie in (1/2, 1]");
  if (!(gamma > 0.0)) throw InvalidParameter("gamma", "must be positive");
}

}  // namespace

double distance_bound_from_entries(const MarkovChain& chain, double beta, double gamma) {
  check_beta_gamma(beta, gamma);
  const auto& p = chain.matrix();
  const auto n = chain.size();
  // gamma usually comes from entry_lower_bound_gamma as (entry * N); undo the rounding of that product.
  const double floor_value = gamma / static_cast<double>(n) * (1.0 - 1e-12);
  const auto need = required_count(beta, n);
  for (Index x = 0; x < p.cols(); ++x) {
    const auto count = static_cast<std::size_t>((p.col(x).array() >= floor_value).count());
    if (count < need) {
      throw PreconditionViolated("distance_bound_from_entries: column " + std::to_string(x) + " has " +
                                 std::to_string(count) + " entries >= gamma/N, needs " + std::to_string(need));
    }
  }
  const double bound = 1.0 - gamma * (1.0 - 2.0 * (1.0 - beta));
  const double d = pairwise_column_distance(chain);
  if (d > bound + 1e-12) {
    throw Error("internal: d(P) = " + std::to_string(d) + " exceeds entry bound " + std::to_string(bound));
  }
  return bound;
}

double entry_lower_bound_gamma(const MarkovChain& chain, double beta) {
  check_beta_gamma(beta, 1.0);
  const auto& p = chain.matrix();
  const auto n = chain.size();
  const auto k = required_count(beta, n);
  double worst = std::numeric_limits<double>::infinity();
  std::vector<double> col(n);
  for (Index x = 0; x < p.cols(); ++x) {
    for (std::size_t y = 0; y < n; ++y) col[y] = p(static_cast<Index>(y), x);
    std::nth_element(col.begin(), col.begin() + static_cast<long>(k - 1), col.end(), std::greater<>());
    worst = std::min(worst, col[k - 1]);
  }
  return worst * static_cast<double>(n);
}

double conductance(const MarkovChain& chain) {
  if (chain.size() > kConductanceMaxStates) {
    throw PreconditionViolated("conductance: exact enumeration supports N <= 20, got N = " +
                               std::to_string(chain.size()));
  }
  if (chain.size() < 2) throw PreconditionViolated("conductance: needs at least 2 states");
  return kernels::min_conductance_cut(chain.matrix(), chain.stationary()).phi;
}

bool MixingReport::all_hold() const {
  return std::all_of(bound_checks.begin(), bound_checks.end(), [](const auto& c) { return c.holds; });
}

const BoundCheck* MixingReport::find(const std::string& name) const {
  for (const auto& c : bound_checks)
    if (c.name == name) return &c;
  return nullptr;
}

long default_horizon(std::size_t n) {
  const double nn = static_cast<double>(n);
  return static_cast<long>(std::ceil(10.0 * nn * (1.0 + std::log(nn))));
}

MixingReport verify_inequalities(const MarkovChain& chain, long horizon) {
  const auto structure = analyze_support(chain.matrix());
  if (!structure.irreducible) throw ReducibleChain(structure.unreachable_from, structure.unreachable_to);
  if (structure.period > 1) {
    throw PreconditionViolated("verify_inequalities: chain " + chain.label() + " is periodic (period " +
                               std::to_string(structure.period) + ")");
  }
  MixingReport r;
  r.delta = spectral_gap(chain);
  r.tau_mix = mixing_time(chain, horizon);
  r.d_of_p = pairwise_column_distance(chain);
  const auto& pi = chain.stationary();
  const double pi_min = pi.minCoeff();
  const double inv_delta = 1.0 / r.delta;

  const double tau = r.tau_mix.steps ? static_cast<double>(*r.tau_mix.steps) : static_cast<double>(horizon);
  BoundCheck lower{"aldous_lower", inv_delta, tau, inv_delta <= tau, false};
  const double upper_rhs = inv_delta * (1.0 + 0.5 * std::log(1.0 / pi_min));
  BoundCheck upper{"aldous_upper", tau, upper_rhs, tau <= upper_rhs, false};
  if (!r.tau_mix.mixed()) {
    // tau > horizon: a violation is certain only when the bound lies below the horizon.
    upper.holds = false;
    upper.inconclusive = upper_rhs >= static_cast<double>(horizon);
  }
  r.bound_checks.push_back(lower);
  r.bound_checks.push_back(upper);

  if (chain.size() <= kConductanceMaxStates && chain.size() >= 2) {
    r.phi = conductance(chain);
    const double phi = *r.phi;
    r.bound_checks.push_back({"cheeger_lower", 0.5 * phi * phi, r.delta, 0.5 * phi * phi <= r.delta, false});
    r.bound_checks.push_back({"cheeger_upper", r.delta, 2.0 * phi, r.delta <= 2.0 * phi, false});
  }

  const double half_norm = distance_to_stationary(chain.matrix(), pi);
  r.bound_checks.push_back({"sandwich_lower", half_norm, r.d_of_p, half_norm <= r.d_of_p, false});
  r.bound_checks.push_back({"sandwich_upper", r.d_of_p, 2.0 * half_norm, r.d_of_p <= 2.0 * half_norm, false});
  return r;
}

}  // namespace qwmix
