#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qwmix/markov_chain.hpp"

namespace qwmix {

inline constexpr double kDefaultClusterTolerance = 1e-8;

/// A maximal run of eigenvalues linked by gaps <= tolerance.
struct EigenCluster {
  double value = 0.0;  // mean of the members
  std::vector<std::size_t> members;
};

/// Continuous-time quantization exp(i H t) with H = D^-1 P D, D = diag(sqrt(pi)).
/// The spectrum is computed eagerly, so instances are freely shareable.
class CTWalk {
 public:
  CTWalk(MarkovChain base, double cluster_tolerance = kDefaultClusterTolerance);

  const MarkovChain& base_chain() const { return base_; }
  std::size_t size() const { return base_.size(); }
  const Eigen::MatrixXd& hamiltonian() const { return h_; }
  /// Ascending.
  const Eigen::VectorXd& eigenvalues() const { return lambda_; }
  /// Orthonormal columns phi_k.
  const Eigen::MatrixXd& eigenvectors() const { return phi_; }
  const std::vector<EigenCluster>& clusters() const { return clusters_; }
  double cluster_tolerance() const { return tol_; }

 private:
  MarkovChain base_;
  Eigen::MatrixXd h_;
  Eigen::VectorXd lambda_;
  Eigen::MatrixXd phi_;
  std::vector<EigenCluster> clusters_;
  double tol_;
};

/// Throws NonReversible.
CTWalk quantize_ct(const MarkovChain& p, double cluster_tolerance = kDefaultClusterTolerance);

/// Single-linkage grouping of sorted values.
std::vector<EigenCluster> cluster_eigenvalues(const Eigen::VectorXd& sorted_values, double tolerance);

/// <y| e^{iHt} |x> for all y.
Eigen::VectorXcd ct_amplitude_row(const CTWalk& walk, std::size_t x, double t);

enum class DTWalkKind { Szegedy, HadamardCycle, GroverLattice };
std::string to_string(DTWalkKind kind);

/// Discrete-time walk: an explicit unitary on the walk space, an embedding of
/// base states as unit wavefunctions, and a position register used to project
/// wavefunctions back onto base states.
class DTWalk {
 public:
  DTWalk(DTWalkKind kind, std::string label, Eigen::MatrixXcd unitary, Eigen::MatrixXcd embedding,
         std::vector<std::size_t> position, std::size_t base_size);

  DTWalkKind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  std::size_t walk_dim() const { return static_cast<std::size_t>(u_.rows()); }
  std::size_t base_size() const { return base_size_; }
  const Eigen::MatrixXcd& unitary() const { return u_; }
  /// Column x is embed(x).
  const Eigen::MatrixXcd& embedding() const { return embed_; }
  /// Base state of each walk basis vector.
  const std::vector<std::size_t>& positions() const { return position_; }

  Eigen::VectorXcd embed(std::size_t x) const { return embed_.col(static_cast<Eigen::Index>(x)); }
  /// Distribution of the position register after a computational-basis measurement.
  Eigen::VectorXd project(const Eigen::VectorXcd& psi) const;
  /// U^steps psi.
  Eigen::VectorXcd evolve(Eigen::VectorXcd psi, long steps) const;

 private:
  DTWalkKind kind_;
  std::string label_;
  Eigen::MatrixXcd u_;
  Eigen::MatrixXcd embed_;
  std::vector<std::size_t> position_;
  std::size_t base_size_;
};

/// U = (R S)^2 on C^N (x) C^N, basis |x,y> at index x*N + y. S swaps the
/// registers, R reflects the second register about |p_x> = sum_y sqrt(P(y,x)) |y>.
/// embed(x) = |x>|p_x>; the first register is the position.
DTWalk quantize_szegedy(const MarkovChain& p);

/// sum_x sqrt(pi_x) |x>|p_x>, fixed by the Szegedy unitary.
Eigen::VectorXcd szegedy_stationary_state(const MarkovChain& p);

/// Hadamard walk on the n-cycle: coin H per position, then |x,L> -> |x-1,L>,
/// |x,R> -> |x+1,R>. Basis index 2x + c with c = 0 (L), 1 (R).
/// embed(x) = |x> (|L> + i|R>)/sqrt 2.
DTWalk hadamard_cycle(int n);

/// Grover-coined walk on lattice(n,d): coin 2|u><u| - I on the 2d directions,
/// then the flip-flop shift |x,(j,+)> -> |x+e_j,(j,-)>, |x,(j,-)> -> |x-e_j,(j,+)>.
/// Basis index x*2d + 2j + s (s = 0 for +, 1 for -). embed(x) = |x>|u>.
DTWalk grover_lattice(int n, int d);

enum class CoinedKind { HadamardCycle, GroverLattice };
/// Dispatches to hadamard_cycle(n) or grover_lattice(n, d).
DTWalk coined_walk(CoinedKind kind, int n, int d = 1);

inline constexpr std::size_t kPhaseGapMaxDim = 4096;
inline constexpr double kPhaseTolerance = 1e-8;

/// min |arg lambda| over eigenvalues of the unitary with |arg lambda| > 1e-8;
/// nullopt when every phase is zero (degenerate spectrum).
/// Throws DimensionCap above walk_dim 4096.
std::optional<double> phase_gap(const DTWalk& walk);

}  // namespace qwmix
