#include <doctest.h>

#include <omp.h>

#include "qwmix/config.hpp"
#include "qwmix/graph.hpp"
#include "qwmix/kernels.hpp"
#include "qwmix/measurement.hpp"
#include "qwmix/quantum_walks.hpp"
#include "support.hpp"

using namespace qwmix;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// Runs `fn` at 1 and 3 OpenMP threads and returns both results.
template <class F>
auto at_thread_counts(F fn) {
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  auto one = fn();
  omp_set_num_threads(3);
  auto three = fn();
  omp_set_num_threads(saved);
  return std::pair{one, three};
}

}  // namespace

TEST_CASE("matmul matches Eigen and is thread-count independent") {
  std::mt19937_64 rng(1);
  const auto a = qwtest::random_symmetric_chain(rng, 150).matrix();
  const auto b = qwtest::random_symmetric_chain(rng, 150).matrix();
  const auto [one, three] = at_thread_counts([&] { return kernels::matmul(a, b); });
  CHECK(one == three);
  CHECK(qwtest::max_abs(one - a * b) <= 1e-14);
}

TEST_CASE("max_column_tv parallel vs reference") {
  std::mt19937_64 rng(2);
  const auto p = qwtest::random_symmetric_chain(rng, 200).matrix();
  const VectorXd u = VectorXd::Constant(200, 1.0 / 200);
  const auto [one, three] = at_thread_counts([&] { return kernels::max_column_tv(p, u); });
  CHECK(one == three);
  CHECK(one == doctest::Approx(kernels::max_column_tv_reference(p, u)).epsilon(1e-14));
}

TEST_CASE("first_time_below agrees with the linear scan") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = qwtest::random_symmetric_chain(rng, 3 + trial, 0.15);
    const VectorXd u = VectorXd::Constant(p.size(), 1.0 / p.size());
    const auto fast = kernels::first_time_below(p.matrix(), u, kMixingThreshold, 500);
    const auto slow = kernels::first_time_below_reference(p.matrix(), u, kMixingThreshold, 500);
    CHECK(fast.time == slow.time);
    kernels::check_monotone(fast);
    kernels::check_monotone(slow);
  }
  // cycle(9): slow chain, exercises many doublings
  const MatrixXd c = standard_chain(cycle_graph(9)).matrix();
  const VectorXd u = VectorXd::Constant(9, 1.0 / 9);
  CHECK(kernels::first_time_below(c, u, kMixingThreshold, 1000).time ==
        kernels::first_time_below_reference(c, u, kMixingThreshold, 1000).time);
  CHECK_FALSE(kernels::first_time_below(c, u, kMixingThreshold, 3).time);
}

TEST_CASE("check_monotone flags increases") {
  kernels::ThresholdSearch s;
  s.trace = {{1, 0.5}, {2, 0.4}, {4, 0.45}};
  CHECK_THROWS(kernels::check_monotone(s));
  s.trace = {{1, 0.5}, {4, 0.3}, {2, 0.4}};
  CHECK_NOTHROW(kernels::check_monotone(s));
}

TEST_CASE("clustered generated kernel vs the O(N^4) pair sum") {
  const CTWalk w(standard_chain(cycle_graph(7)));
  const auto rule = MeasurementRule::exponential(3.0);
  const auto m = static_cast<Eigen::Index>(w.clusters().size());
  MatrixXd kernel(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b)
      kernel(a, b) = rule.characteristic(w.clusters()[a].value - w.clusters()[b].value).real();
  std::vector<std::vector<std::size_t>> members;
  for (const auto& c : w.clusters()) members.push_back(c.members);
  const auto [one, three] =
      at_thread_counts([&] { return kernels::clustered_generated(w.eigenvectors(), members, kernel); });
  CHECK(one == three);
  const MatrixXd ref = kernels::spectral_generated_reference(w.eigenvectors(), w.eigenvalues(),
                                                             [&](double t) { return rule.characteristic(t); });
  CHECK(qwtest::max_abs(one - ref) <= 1e-12);
}

TEST_CASE("propagator_squared equals the delta pair sum") {
  const CTWalk w(standard_chain(hypercube_graph(3)));
  const double t = 1.3;
  const MatrixXd p = kernels::propagator_squared(w.eigenvectors(), w.eigenvalues(), t);
  const MatrixXd ref = kernels::spectral_generated_reference(w.eigenvectors(), w.eigenvalues(), [&](double th) {
    return std::exp(std::complex<double>(0, th * t));
  });
  CHECK(qwtest::max_abs(p - ref) <= 1e-12);
}

TEST_CASE("dt_generated parallel vs per-column reference") {
  const DTWalk w = quantize_szegedy(standard_chain(cycle_graph(9)));
  std::vector<double> weights(12, 1.0 / 12);
  const auto [one, three] = at_thread_counts(
      [&] { return kernels::dt_generated(w.unitary(), w.embedding(), w.positions(), w.base_size(), weights); });
  CHECK(one == three);
  const MatrixXd ref =
      kernels::dt_generated_reference(w.unitary(), w.embedding(), w.positions(), w.base_size(), weights);
  CHECK(qwtest::max_abs(one - ref) <= 1e-12);
}

TEST_CASE("min_conductance_cut parallel vs reference") {
  std::mt19937_64 rng(4);
  for (int n : {4, 9, 14}) {
    const auto p = qwtest::random_symmetric_chain(rng, n, 0.3);
    const auto [one, three] =
        at_thread_counts([&] { return kernels::min_conductance_cut(p.matrix(), p.stationary()); });
    CHECK(one.phi == three.phi);
    CHECK(one.set == three.set);
    const auto ref = kernels::min_conductance_cut_reference(p.matrix(), p.stationary());
    CHECK(one.phi == doctest::Approx(ref.phi).epsilon(1e-12));
  }
}
