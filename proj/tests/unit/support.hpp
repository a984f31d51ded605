#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "qwmix/markov_chain.hpp"

namespace qwtest {

inline constexpr std::uint64_t kCorpusSeed = 0xC0FFEE;

// Symmetric stochastic: symmetrize a sparse random matrix plus a ring (for
// irreducibility), scale so every row sum is <= 1, put the rest on the diagonal.
inline qwmix::MarkovChain random_symmetric_chain(std::mt19937_64& rng, int n, double density = 0.5) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (unif(rng) < density) a(i, j) = a(j, i) = unif(rng);
  for (int i = 0; i < n && n > 1; ++i) {
    const int j = (i + 1) % n;
    if (i != j) a(i, j) = a(j, i) = std::max(a(i, j), 0.1 + unif(rng));
  }
  a /= a.rowwise().sum().maxCoeff() * (1.0 + 0.2 * unif(rng));
  for (int i = 0; i < n; ++i) a(i, i) = 1.0 - (a.row(i).sum() - a(i, i));
  return qwmix::MarkovChain(a, "random_symmetric(" + std::to_string(n) + ")");
}

inline Eigen::VectorXd sym_eigenvalues(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues();
}

// Power series in 100-digit arithmetic; the cancellation at t ~ 100 costs
// about 45 digits.
inline double bessel_series(int n, double t) {
  using big = boost::multiprecision::cpp_bin_float_100;
  const bool neg = n < 0;
  if (neg) n = -n;
  const big half = big(t) / 2;
  const big x2 = half * half;
  big term = 1;
  for (int k = 1; k <= n; ++k) term = term * half / k;
  big sum = term;
  for (int k = 1; k < 1000; ++k) {
    term = -term * x2 / (big(k) * big(k + n));
    sum += term;
    if (abs(term) < big("1e-60") * (abs(sum) + big("1e-300"))) break;
  }
  const double v = static_cast<double>(sum);
  return neg && (n % 2) ? -v : v;
}

inline double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace qwtest
