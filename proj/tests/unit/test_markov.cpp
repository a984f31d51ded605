#include <doctest.h>

#include <numbers>
#include <sstream>

#include "qwmix/config.hpp"
#include "qwmix/error.hpp"
#include "qwmix/graph.hpp"
#include "qwmix/kernels.hpp"
#include "qwmix/markov_analysis.hpp"
#include "support.hpp"

using namespace qwmix;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// Matrix powers by plain repeated multiplication.
long naive_mixing_time(const MatrixXd& p, const VectorXd& pi, long horizon) {
  MatrixXd m = p;
  for (long t = 1; t <= horizon; ++t) {
    double worst = 0;
    for (Eigen::Index x = 0; x < m.cols(); ++x) worst = std::max(worst, 0.5 * (m.col(x) - pi).lpNorm<1>());
    if (worst <= kMixingThreshold) return t;
    m = p * m;
  }
  return -1;
}

double brute_conductance(const MatrixXd& p, const VectorXd& pi) {
  const auto n = p.rows();
  double best = std::numeric_limits<double>::infinity();
  for (unsigned long s = 1; s + 1 < (1ul << n); ++s) {
    double mass = 0, flow = 0;
    for (int x = 0; x < n; ++x)
      if (s >> x & 1) {
        mass += pi(x);
        for (int y = 0; y < n; ++y)
          if (!(s >> y & 1)) flow += pi(x) * p(y, x);
      }
    if (mass <= 0.5 + 1e-12) best = std::min(best, flow / mass);
  }
  return best;
}

}  // namespace

TEST_CASE("MarkovChain validation") {
  MatrixXd bad(2, 2);
  bad << 0.5, 0.5, 0.4, 0.5;
  CHECK_THROWS_AS((void)MarkovChain(bad), InvalidParameter);
  MatrixXd neg(2, 2);
  neg << 1.0 + 1e-15, 0.5, -1e-15, 0.5;
  const MarkovChain clamped(neg);
  CHECK(clamped(1, 0) == 0.0);
  MatrixXd very_neg(2, 2);
  very_neg << 1.1, 0.5, -0.1, 0.5;
  CHECK_THROWS_AS((void)MarkovChain(very_neg), InvalidParameter);
}

TEST_CASE("stationary_distribution examples") {
  const VectorXd u5 = standard_chain(cycle_graph(5)).stationary();
  for (int i = 0; i < 5; ++i) CHECK(u5(i) == 0.2);

  const VectorXd p3 = stationary_distribution(standard_chain(path_graph(3)));
  CHECK(p3(0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(p3(1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p3(2) == doctest::Approx(0.25).epsilon(1e-14));

  const VectorXd u = MarkovChain::uniform_projector(6).stationary();
  for (int i = 0; i < 6; ++i) CHECK(u(i) == doctest::Approx(1.0 / 6));

  // non-uniform stationary distribution, residual check
  const MarkovChain path = standard_chain(path_graph(7));
  const VectorXd pi = path.stationary();
  CHECK((path.matrix() * pi - pi).lpNorm<1>() <= 1e-10);
  CHECK(pi.minCoeff() > 0);
}

TEST_CASE("reducible chains are rejected with a disconnected pair") {
  MatrixXd p = MatrixXd::Zero(4, 4);
  p(1, 0) = p(0, 1) = 1;
  p(3, 2) = p(2, 3) = 1;
  const MarkovChain c(p);
  CHECK_THROWS_AS(stationary_distribution(c), ReducibleChain);
  try {
    stationary_distribution(c);
  } catch (const ReducibleChain& e) {
    CHECK(e.from() != e.to());
    CHECK((e.from() < 2) != (e.to() < 2));
  }
  CHECK_THROWS_AS(mixing_time(c, 10), ReducibleChain);
  CHECK(spectral_gap(c) == 0.0);
}

TEST_CASE("spectral_gap examples against a dense eigensolve") {
  CHECK(spectral_gap(standard_chain(cycle_graph(4))) == 0.0);
  const double g5 = spectral_gap(standard_chain(cycle_graph(5)));
  // 1 - max |lambda| over the nontrivial spectrum: |cos(4 pi/5)| = cos(pi/5)
  // dominates cos(2 pi/5), so the one-sided value 0.6910 is not the gap.
  const auto ev5 = qwtest::sym_eigenvalues(standard_chain(cycle_graph(5)).matrix());
  CHECK(g5 == doctest::Approx(1 - std::max(std::abs(ev5(0)), ev5(3))).epsilon(1e-12));
  CHECK(g5 == doctest::Approx(1 - std::cos(std::numbers::pi / 5)).epsilon(1e-12));
  CHECK(g5 == doctest::Approx(0.1909830056).epsilon(1e-9));
  CHECK(spectral_gap(MarkovChain::uniform_projector(7)) == doctest::Approx(1.0).epsilon(1e-12));

  // oracle: second largest |eigenvalue| of the symmetric matrix itself
  std::mt19937_64 rng(qwtest::kCorpusSeed);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = qwtest::random_symmetric_chain(rng, 3 + trial % 10);
    VectorXd ev = qwtest::sym_eigenvalues(p.matrix());
    std::vector<double> mags(ev.data(), ev.data() + ev.size());
    for (auto& m : mags) m = std::abs(m);
    std::sort(mags.begin(), mags.end());
    CHECK(spectral_gap(p) == doctest::Approx(1 - mags[mags.size() - 2]).epsilon(1e-10));
  }
}

TEST_CASE("spectral_gap of a non-symmetric reversible chain") {
  // path(5): eigenvalues of the walk are cos(pi j/4); the top non-unit modulus is 1 (bipartite)
  CHECK(spectral_gap(standard_chain(path_graph(5))) == 0.0);
  // lazy path: eigenvalues (1 + cos(pi j/4))/2, gap = (1 - cos(pi/4))/2
  const MarkovChain p = standard_chain(path_graph(5));
  const MarkovChain lazy(0.5 * (MatrixXd::Identity(5, 5) + p.matrix()));
  CHECK(spectral_gap(lazy) == doctest::Approx((1 - std::cos(std::numbers::pi / 4)) / 2).epsilon(1e-12));
}

TEST_CASE("spectral_gap rejects non-reversible chains") {
  MatrixXd p(3, 3);  // biased 3-cycle
  p << 0.1, 0.2, 0.7, 0.7, 0.1, 0.2, 0.2, 0.7, 0.1;
  CHECK_THROWS_AS(spectral_gap(MarkovChain(p)), NonReversible);
}

TEST_CASE("pairwise_column_distance examples") {
  CHECK(pairwise_column_distance(MarkovChain::uniform_projector(5)) == 0.0);
  CHECK(pairwise_column_distance(MarkovChain::identity(4)) == 1.0);
  CHECK(pairwise_column_distance(standard_chain(complete_graph(3))) == doctest::Approx(0.5));
}

TEST_CASE("mixing_time examples") {
  CHECK(mixing_time(MarkovChain::uniform_projector(5), 10).steps == 1L);
  const auto c4 = mixing_time(standard_chain(cycle_graph(4)), 50);
  CHECK_FALSE(c4.mixed());
  CHECK(c4.to_string() == "NoMix(50)");
  // distance after one step is 1/4 > 1/(2e)
  const MarkovChain k4 = standard_chain(complete_graph(4));
  CHECK(distance_to_stationary(k4.matrix(), k4.stationary()) == doctest::Approx(0.25));
  CHECK(mixing_time(k4, 10).steps == 2L);
  CHECK_THROWS_AS(mixing_time(k4, 0), InvalidParameter);
  // horizon too short
  CHECK_FALSE(mixing_time(standard_chain(cycle_graph(31)), 5).mixed());
}

TEST_CASE("mixing_time agrees with direct powers") {
  std::mt19937_64 rng(qwtest::kCorpusSeed);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = qwtest::random_symmetric_chain(rng, 2 + trial % 15, 0.2);
    const long h = 400;
    const long want = naive_mixing_time(p.matrix(), p.stationary(), h);
    const auto got = mixing_time(p, h);
    CAPTURE(trial);
    if (want < 0)
      CHECK_FALSE(got.mixed());
    else
      CHECK(got.steps == want);
  }
  for (int n : {5, 9, 15}) {
    const MarkovChain c = standard_chain(cycle_graph(n));
    CHECK(mixing_time(c, 2000).steps == naive_mixing_time(c.matrix(), c.stationary(), 2000));
  }
  const MarkovChain path = standard_chain(path_graph(6));
  const MarkovChain lazy(0.5 * (MatrixXd::Identity(6, 6) + path.matrix()));
  CHECK(mixing_time(lazy, 2000).steps == naive_mixing_time(lazy.matrix(), lazy.stationary(), 2000));
}

TEST_CASE("mixing_time_bound_from_distance") {
  CHECK(mixing_time_bound_from_distance(1 / (2 * std::numbers::e)) == 1);
  CHECK(mixing_time_bound_from_distance(0.5) == 3);
  CHECK(mixing_time_bound_from_distance(0.9) == 17);
  CHECK_THROWS_AS(mixing_time_bound_from_distance(0.0), InvalidParameter);
  CHECK_THROWS_AS(mixing_time_bound_from_distance(1.0), InvalidParameter);
}

TEST_CASE("distance_bound_from_entries") {
  CHECK(distance_bound_from_entries(MarkovChain::uniform_projector(4), 1.0, 1.0) == doctest::Approx(0.0));
  // 2/3 of each column at least (1/2)/N: K_3 has 2 of 3 entries equal to 1/2 >= 1/6
  CHECK(distance_bound_from_entries(standard_chain(complete_graph(3)), 2.0 / 3.0, 0.5) ==
        doctest::Approx(5.0 / 6.0));
  CHECK(distance_bound_from_entries(MarkovChain::uniform_projector(5), 0.6, 1.0) == doctest::Approx(0.8));
  CHECK_THROWS_AS(distance_bound_from_entries(MarkovChain::identity(4), 0.75, 1.0), PreconditionViolated);
  CHECK_THROWS_AS(distance_bound_from_entries(MarkovChain::identity(4), 0.5, 1.0), InvalidParameter);
}

TEST_CASE("conductance examples against brute force") {
  const MarkovChain k4 = standard_chain(complete_graph(4));
  CHECK(conductance(k4) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(brute_conductance(k4.matrix(), k4.stationary()) == doctest::Approx(2.0 / 3.0));
  CHECK(conductance(standard_chain(cycle_graph(8))) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK_THROWS_AS(conductance(standard_chain(cycle_graph(21))), PreconditionViolated);

  std::mt19937_64 rng(qwtest::kCorpusSeed + 1);
  for (int trial = 0; trial < 25; ++trial) {
    const auto p = qwtest::random_symmetric_chain(rng, 2 + trial % 11, 0.3);
    const double phi = conductance(p);
    CHECK(phi > 0);
    CHECK(phi == doctest::Approx(brute_conductance(p.matrix(), p.stationary())).epsilon(1e-12));
  }
  const MarkovChain path = standard_chain(path_graph(7));
  CHECK(conductance(path) == doctest::Approx(brute_conductance(path.matrix(), path.stationary())).epsilon(1e-12));
}

TEST_CASE("verify_inequalities reports consistent triples") {
  const auto r = verify_inequalities(MarkovChain::uniform_projector(6), 10);
  CHECK(r.tau_mix.steps == 1L);
  const auto* lower = r.find("aldous_lower");
  REQUIRE(lower);
  CHECK(lower->lhs == doctest::Approx(1.0));
  CHECK(lower->holds);
  CHECK(r.find("aldous_upper")->holds);

  const auto c5 = verify_inequalities(standard_chain(cycle_graph(5)), 100);
  for (const auto& c : c5.bound_checks) {
    CAPTURE(c.name);
    CHECK(c.holds == (c.lhs <= c.rhs));
    CHECK(c.holds);
  }
  REQUIRE(c5.phi);
  CHECK(c5.find("cheeger_lower"));
  CHECK_FALSE(verify_inequalities(standard_chain(cycle_graph(25)), 1000).phi);
  CHECK_THROWS_AS(verify_inequalities(standard_chain(cycle_graph(6)), 100), PreconditionViolated);

  // horizon too short: upper check is flagged inconclusive, not silently passed
  const auto short_h = verify_inequalities(standard_chain(cycle_graph(15)), 3);
  CHECK_FALSE(short_h.tau_mix.mixed());
  CHECK(short_h.find("aldous_upper")->inconclusive);
  CHECK_FALSE(short_h.find("aldous_upper")->holds);
}

TEST_CASE("property: bounds dominate measured quantities on random symmetric chains") {
  std::mt19937_64 rng(qwtest::kCorpusSeed);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = qwtest::random_symmetric_chain(rng, 2 + trial % 15);
    CAPTURE(trial);
    const double d = pairwise_column_distance(p);
    const VectorXd u = p.stationary();
    const double half = distance_to_stationary(p.matrix(), u);
    CHECK(half <= d + 1e-12);
    CHECK(d <= 2 * half + 1e-12);
    const auto tau = mixing_time(p, default_horizon(p.size()));
    REQUIRE(tau.mixed());
    if (d > 0 && d < 1) CHECK(*tau.steps <= mixing_time_bound_from_distance(d));
    for (double beta : {0.6, 0.75, 1.0}) {
      const double gamma = entry_lower_bound_gamma(p, beta);
      if (gamma <= 0) continue;
      CHECK(d <= distance_bound_from_entries(p, beta, gamma) + 1e-12);
    }
    const auto r = verify_inequalities(p, default_horizon(p.size()));
    for (const auto& c : r.bound_checks) CHECK(c.holds == (c.lhs <= c.rhs));
    CHECK(r.find("aldous_upper")->holds);
    CHECK(r.find("sandwich_lower")->holds);
    CHECK(r.find("sandwich_upper")->holds);
    CHECK(r.find("cheeger_upper")->holds);
    // The lower bound is a statement about 1 - lambda_2. With the absolute gap
    // it can only fail when a negative eigenvalue sets delta.
    REQUIRE(r.phi);
    const VectorXd ev = qwtest::sym_eigenvalues(p.matrix());  // symmetric, uniform pi
    const double one_sided = 1.0 - ev(ev.size() - 2);
    CHECK(0.5 * *r.phi * *r.phi <= one_sided + 1e-12);
    if (!r.find("cheeger_lower")->holds) CHECK(-ev(0) > ev(ev.size() - 2));
  }
}

TEST_CASE("column sums of chain products stay stochastic") {
  std::mt19937_64 rng(7);
  const auto p = qwtest::random_symmetric_chain(rng, 12);
  MatrixXd m = p.matrix();
  for (int i = 0; i < 20; ++i) m = kernels::matmul(p.matrix(), m);
  CHECK((m.colwise().sum().array() - 1).abs().maxCoeff() <= 1e-10);
  CHECK(m.minCoeff() >= 0);
}

TEST_CASE("chain CSV round trip is bit-stable") {
  std::mt19937_64 rng(11);
  const auto p = qwtest::random_symmetric_chain(rng, 9);
  std::stringstream ss;
  write_chain_csv(p, ss);
  CHECK(ss.str().rfind("# column-stochastic N=9\n", 0) == 0);
  const MarkovChain back = read_chain_csv(ss);
  CHECK(back.matrix() == p.matrix());
  std::stringstream bad("# column-stochastic N=2\n0.5,0.5\n0.4,0.5\n");
  CHECK_THROWS_AS(read_chain_csv(bad), Error);
}

TEST_CASE("stationary cache is shared and thread safe") {
  const MarkovChain p = standard_chain(path_graph(40));
  const MarkovChain copy = p;
  std::vector<const VectorXd*> seen(8);
#pragma omp parallel for num_threads(4)
  for (int i = 0; i < 8; ++i) seen[i] = &(i % 2 ? copy : p).stationary();
  for (auto* s : seen) CHECK(s == seen[0]);
}
