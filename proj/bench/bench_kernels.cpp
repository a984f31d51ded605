// Parallel kernels against their serial references. Run with OMP_NUM_THREADS
// set to compare thread counts.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "qwmix/graph.hpp"
#include "qwmix/kernels.hpp"
#include "qwmix/markov_chain.hpp"

using namespace qwmix;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MatrixXd random_matrix(int n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  MatrixXd m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = u(rng);
  return m;
}

MatrixXd cycle_matrix(int n) { return standard_chain(cycle_graph(n)).matrix(); }

void BM_matmul(benchmark::State& s) {
  const MatrixXd a = random_matrix(static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::matmul(a, a));
}

void BM_matmul_eigen(benchmark::State& s) {
  const MatrixXd a = random_matrix(static_cast<int>(s.range(0)));
  for (auto _ : s) {
    MatrixXd c = a * a;
    benchmark::DoNotOptimize(c);
  }
}

void BM_max_column_tv(benchmark::State& s) {
  const int n = static_cast<int>(s.range(0));
  const MatrixXd m = random_matrix(n);
  const VectorXd pi = VectorXd::Constant(n, 1.0 / n);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::max_column_tv(m, pi));
}

void BM_max_column_tv_reference(benchmark::State& s) {
  const int n = static_cast<int>(s.range(0));
  const MatrixXd m = random_matrix(n);
  const VectorXd pi = VectorXd::Constant(n, 1.0 / n);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::max_column_tv_reference(m, pi));
}

void BM_first_time_below(benchmark::State& s) {
  const int n = static_cast<int>(s.range(0)) | 1;
  const MatrixXd p = cycle_matrix(n);
  const VectorXd pi = VectorXd::Constant(n, 1.0 / n);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::first_time_below(p, pi, 0.18, 100000));
}

void BM_first_time_below_reference(benchmark::State& s) {
  const int n = static_cast<int>(s.range(0)) | 1;
  const MatrixXd p = cycle_matrix(n);
  const VectorXd pi = VectorXd::Constant(n, 1.0 / n);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::first_time_below_reference(p, pi, 0.18, 100000));
}

struct Spectral {
  MatrixXd phi;
  VectorXd lambda;
  std::vector<std::vector<std::size_t>> clusters;
  MatrixXd kernel;
};

Spectral cycle_spectrum(int n) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(cycle_matrix(n));
  Spectral sp{es.eigenvectors(), es.eigenvalues(), {}, {}};
  for (int k = 0; k < n; ++k) {
    if (sp.clusters.empty() || sp.lambda(k) - sp.lambda(sp.clusters.back().front()) > 1e-9)
      sp.clusters.emplace_back();
    sp.clusters.back().push_back(static_cast<std::size_t>(k));
  }
  const auto c = static_cast<Eigen::Index>(sp.clusters.size());
  sp.kernel.resize(c, c);
  for (Eigen::Index a = 0; a < c; ++a)
    for (Eigen::Index b = 0; b < c; ++b) {
      const double x = 3.0 * (sp.lambda(sp.clusters[a].front()) - sp.lambda(sp.clusters[b].front()));
      sp.kernel(a, b) = std::abs(x) < 1e-12 ? 1.0 : std::sin(x) / x;
    }
  return sp;
}

void BM_clustered_generated(benchmark::State& s) {
  const Spectral sp = cycle_spectrum(static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::clustered_generated(sp.phi, sp.clusters, sp.kernel));
}

void BM_spectral_generated_reference(benchmark::State& s) {
  const Spectral sp = cycle_spectrum(static_cast<int>(s.range(0)));
  const auto chi = [](double x) {
    const double y = 3.0 * x;
    return std::complex<double>(std::abs(y) < 1e-12 ? 1.0 : std::sin(y) / y, 0.0);
  };
  for (auto _ : s) benchmark::DoNotOptimize(kernels::spectral_generated_reference(sp.phi, sp.lambda, chi));
}

struct DtSetup {
  Eigen::MatrixXcd u, embed;
  std::vector<std::size_t> position;
  std::vector<double> weights;
  std::size_t n = 0;
};

// Coined walk on a cycle with a Hadamard coin, index 2x+c.
DtSetup hadamard_setup(int n, int steps) {
  DtSetup d;
  d.n = static_cast<std::size_t>(n);
  const int dim = 2 * n;
  d.u = Eigen::MatrixXcd::Zero(dim, dim);
  const double h = 1.0 / std::sqrt(2.0);
  for (int x = 0; x < n; ++x) {
    const int left = (x + n - 1) % n, right = (x + 1) % n;
    d.u(2 * left, 2 * x) = h;
    d.u(2 * left, 2 * x + 1) = h;
    d.u(2 * right + 1, 2 * x) = h;
    d.u(2 * right + 1, 2 * x + 1) = -h;
  }
  d.embed = Eigen::MatrixXcd::Zero(dim, n);
  for (int x = 0; x < n; ++x) d.embed(2 * x, x) = 1.0;
  for (int i = 0; i < dim; ++i) d.position.push_back(static_cast<std::size_t>(i / 2));
  d.weights.assign(static_cast<std::size_t>(steps), 1.0 / steps);
  return d;
}

void BM_dt_generated(benchmark::State& s) {
  const auto d = hadamard_setup(static_cast<int>(s.range(0)), 32);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::dt_generated(d.u, d.embed, d.position, d.n, d.weights));
}

void BM_dt_generated_reference(benchmark::State& s) {
  const auto d = hadamard_setup(static_cast<int>(s.range(0)), 32);
  for (auto _ : s)
    benchmark::DoNotOptimize(kernels::dt_generated_reference(d.u, d.embed, d.position, d.n, d.weights));
}

void BM_min_conductance_cut(benchmark::State& s) {
  const int n = static_cast<int>(s.range(0));
  const MatrixXd p = cycle_matrix(n);
  const VectorXd pi = VectorXd::Constant(n, 1.0 / n);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::min_conductance_cut(p, pi));
}

void BM_min_conductance_cut_reference(benchmark::State& s) {
  const int n = static_cast<int>(s.range(0));
  const MatrixXd p = cycle_matrix(n);
  const VectorXd pi = VectorXd::Constant(n, 1.0 / n);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::min_conductance_cut_reference(p, pi));
}

}  // namespace

BENCHMARK(BM_matmul)->Arg(128)->Arg(256);
BENCHMARK(BM_matmul_eigen)->Arg(128)->Arg(256);
BENCHMARK(BM_max_column_tv)->Arg(256)->Arg(1024);
BENCHMARK(BM_max_column_tv_reference)->Arg(256)->Arg(1024);
BENCHMARK(BM_first_time_below)->Arg(33)->Arg(65);
BENCHMARK(BM_first_time_below_reference)->Arg(33)->Arg(65);
BENCHMARK(BM_clustered_generated)->Arg(32)->Arg(64);
BENCHMARK(BM_spectral_generated_reference)->Arg(32)->Arg(64);
BENCHMARK(BM_dt_generated)->Arg(32)->Arg(64);
BENCHMARK(BM_dt_generated_reference)->Arg(32)->Arg(64);
BENCHMARK(BM_min_conductance_cut)->Arg(12)->Arg(16);
BENCHMARK(BM_min_conductance_cut_reference)->Arg(12)->Arg(16);

BENCHMARK_MAIN();
