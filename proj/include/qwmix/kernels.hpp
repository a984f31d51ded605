#pragma once

// Dense kernels behind the analysis and walk modules. Each OpenMP kernel has a
// serial reference kept for tests and benchmarks. Parallel loops only split
// independent output columns, so results do not depend on the thread count.

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace qwmix::kernels {

/// C = A * B, split over column blocks of B.
Eigen::MatrixXd matmul(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// max_x 1/2 ||M(.,x) - pi||_1.
double max_column_tv(const Eigen::MatrixXd& m, const Eigen::VectorXd& pi);
double max_column_tv_reference(const Eigen::MatrixXd& m, const Eigen::VectorXd& pi);

struct ThresholdSearch {
  /// Smallest t in [1, horizon] with f(t) <= threshold, if any.
  std::optional<long> time;
  /// Every (t, f(t)) evaluated, in evaluation order.
  std::vector<std::pair<long, double>> trace;
};

/// f(t) = max_column_tv(P^t, pi). Uses repeated squaring and a greedy binary
/// descent; f is nonincreasing in t, so O(log t) products suffice.
ThresholdSearch first_time_below(const Eigen::MatrixXd& p, const Eigen::VectorXd& pi,
                                 double threshold, long horizon);
/// Linear scan t = 1, 2, ... with one product per step.
ThresholdSearch first_time_below_reference(const Eigen::MatrixXd& p, const Eigen::VectorXd& pi,
                                           double threshold, long horizon);

/// Throws qwmix::Error when the trace shows f increasing by more than `slack`.
void check_monotone(const ThresholdSearch& search, double slack = 1e-9);

/// Generated chain of a real-symmetric Hamiltonian from cluster projectors:
///   out(y,x) = sum_{j,j'} A_j(y,x) A_j'(y,x) kernel(j,j'),
///   A_j(y,x) = sum_{k in C_j} phi_k(y) phi_k(x).
/// `kernel` is the real part of chi(mu_j - mu_j'); the identity gives the
/// T -> infinity limit matrix.
Eigen::MatrixXd clustered_generated(const Eigen::MatrixXd& phi,
                                    const std::vector<std::vector<std::size_t>>& clusters,
                                    const Eigen::MatrixXd& kernel);

/// Direct double sum over eigenpairs: sum_{k,l} a_k a_l Re chi(lambda_k - lambda_l)
/// with a_k = phi_k(y) phi_k(x). O(N^4), serial.
Eigen::MatrixXd spectral_generated_reference(
    const Eigen::MatrixXd& phi, const Eigen::VectorXd& lambda,
    const std::function<std::complex<double>(double)>& chi);

/// |<y| Phi diag(e^{i lambda t}) Phi^T |x>|^2.
Eigen::MatrixXd propagator_squared(const Eigen::MatrixXd& phi, const Eigen::VectorXd& lambda,
                                   double t);

/// Discrete-time generated chain:
///   out(pos, x) = sum_t w_t sum_{i : position[i] = pos} |(U^t E)(i, x)|^2.
/// Columns of E are evolved in blocks.
Eigen::MatrixXd dt_generated(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& embed,
                             std::span<const std::size_t> position, std::size_t n_positions,
                             std::span<const double> weights);
/// One column at a time with matrix-vector products.
Eigen::MatrixXd dt_generated_reference(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& embed,
                                       std::span<const std::size_t> position,
                                       std::size_t n_positions, std::span<const double> weights);

struct CutResult {
  double phi = 0.0;
  /// Bitmask of the minimizing set S.
  unsigned long long set = 0;
};

/// min over nonempty S with pi(S) <= 1/2 of Q(S,S^c)/pi(S), Q(x,y) = pi_x P(y,x).
CutResult min_conductance_cut(const Eigen::MatrixXd& p, const Eigen::VectorXd& pi);
CutResult min_conductance_cut_reference(const Eigen::MatrixXd& p, const Eigen::VectorXd& pi);

}  // namespace qwmix::kernels
