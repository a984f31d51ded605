#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <string>

namespace qwmix {

/// Column-stochastic matrix over states 0..N-1: entry (y, x) is the probability
/// of moving from x to y, so P * pi = pi for the stationary distribution.
///
/// Immutable once constructed. The stationary distribution is computed on first
/// use under a once-only guard and shared between copies.
class MarkovChain {
 public:
  /// Validates stochasticity: entries >= -1e-14 (tiny negatives are clamped to 0),
  /// every column sums to 1 within 1e-10.
  explicit MarkovChain(Eigen::MatrixXd entries, std::string label = "custom");

  /// Rank-one chain u 1^T: every column is uniform.
  static MarkovChain uniform_projector(std::size_t n);
  static MarkovChain identity(std::size_t n);

  std::size_t size() const { return static_cast<std::size_t>(p_.rows()); }
  const Eigen::MatrixXd& matrix() const { return p_; }
  double operator()(std::size_t y, std::size_t x) const { return p_(y, x); }
  const std::string& label() const { return label_; }

  /// max |P(y,x) - P(x,y)| <= tol.
  bool is_symmetric(double tol = 0.0) const;

  /// Cached stationary distribution; see stationary_distribution().
  const Eigen::VectorXd& stationary() const;

 private:
  struct Cache;
  Eigen::MatrixXd p_;
  std::string label_;
  std::shared_ptr<Cache> cache_;
};

/// Dense CSV, row-major (row y lists P(y,0..N-1)), header
/// "# column-stochastic N=<N>", 17 significant digits.
void write_chain_csv(const MarkovChain& chain, std::ostream& out);
MarkovChain read_chain_csv(std::istream& in, std::string label = "csv");

}  // namespace qwmix
