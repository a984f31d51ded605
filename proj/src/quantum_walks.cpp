#include "qwmix/quantum_walks.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "qwmix/config.hpp"
#include "qwmix/error.hpp"

namespace qwmix {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using cd = std::complex<double>;

std::vector<EigenCluster> cluster_eigenvalues(const VectorXd& values, double tolerance) {
  std::vector<EigenCluster> out;
  for (Index k = 0; k < values.size(); ++k) {
    if (out.empty() || values(k) - values(k - 1) > tolerance) out.emplace_back();
    out.back().members.push_back(static_cast<std::size_t>(k));
  }
  for (auto& c : out) {
    double s = 0.0;
    for (auto k : c.members) s += values(static_cast<Index>(k));
    c.value = s / static_cast<double>(c.members.size());
  }
  return out;
}

CTWalk::CTWalk(MarkovChain base, double cluster_tolerance) : base_(std::move(base)), tol_(cluster_tolerance) {
  if (!(cluster_tolerance >= 0.0)) throw InvalidParameter("cluster_tolerance", "must be >= 0");
  const VectorXd sqrt_pi = base_.stationary().cwiseSqrt();
  const auto& p = base_.matrix();
  h_ = sqrt_pi.cwiseInverse().asDiagonal() * p * sqrt_pi.asDiagonal();
  const double asym = (h_ - h_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10) throw NonReversible(asym);
  h_ = 0.5 * (h_ + h_.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(h_);
  if (eig.info() != Eigen::Success) throw Error("quantize_ct: eigensolver did not converge");
  lambda_ = eig.eigenvalues();
  phi_ = eig.eigenvectors();
  clusters_ = cluster_eigenvalues(lambda_, tol_);
}

CTWalk quantize_ct(const MarkovChain& p, double cluster_tolerance) { return CTWalk(p, cluster_tolerance); }

VectorXcd ct_amplitude_row(const CTWalk& walk, std::size_t x, double t) {
  const auto& phi = walk.eigenvectors();
  const auto& lambda = walk.eigenvalues();
  if (x >= walk.size()) throw InvalidParameter("x", "state out of range");
  VectorXcd coeff(lambda.size());
  for (Index k = 0; k < lambda.size(); ++k) {
    coeff(k) = phi(static_cast<Index>(x), k) * std::exp(cd(0.0, lambda(k) * t));
  }
  return phi.cast<cd>() * coeff;
}

std::string to_string(DTWalkKind kind) {
  switch (kind) {
    case DTWalkKind::Szegedy: return "szegedy";
    case DTWalkKind::HadamardCycle: return "hadamard_cycle";
    case DTWalkKind::GroverLattice: return "grover_lattice";
  }
  return "szegedy";
}

DTWalk::DTWalk(DTWalkKind kind, std::string label, MatrixXcd unitary, MatrixXcd embedding,
               std::vector<std::size_t> position, std::size_t base_size)
    : kind_(kind),
      label_(std::move(label)),
      u_(std::move(unitary)),
      embed_(std::move(embedding)),
      position_(std::move(position)),
      base_size_(base_size) {
  if (u_.rows() != u_.cols()) throw InvalidParameter("unitary", "must be square");
  if (embed_.rows() != u_.rows() || static_cast<std::size_t>(embed_.cols()) != base_size_) {
    throw InvalidParameter("embedding", "must be walk_dim x base_size");
  }
  if (position_.size() != static_cast<std::size_t>(u_.rows())) {
    throw InvalidParameter("position", "needs one entry per walk basis vector");
  }
  for (auto p : position_)
    if (p >= base_size_) throw InvalidParameter("position", "position index out of range");
}

VectorXd DTWalk::project(const VectorXcd& psi) const {
  VectorXd out = VectorXd::Zero(static_cast<Index>(base_size_));
  for (Index i = 0; i < psi.size(); ++i) out(static_cast<Index>(position_[static_cast<std::size_t>(i)])) += std::norm(psi(i));
  return out;
}

VectorXcd DTWalk::evolve(VectorXcd psi, long steps) const {
  for (long s = 0; s < steps; ++s) psi = (u_ * psi).eval();
  return psi;
}

namespace {

// Column (x,y) of R S: S sends it to |y,x>, R reflects the second register
// about |p_y>, giving sum_z (2 p_y(z) p_y(x) - [z == x]) |y,z>.
template <typename Fn>
void for_each_rs_entry(const MatrixXd& amp, Index n, Index x, Index y, Fn&& fn) {
  const double ax = amp(x, y);
  for (Index z = 0; z < n; ++z) {
    double v = 2.0 * amp(z, y) * ax;
    if (z == x) v -= 1.0;
    if (v != 0.0) fn(y * n + z, v);
  }
}

}  // namespace

DTWalk quantize_szegedy(const MarkovChain& p) {
  const Index n = static_cast<Index>(p.size());
  check_cap(static_cast<std::size_t>(n * n));
  const MatrixXd amp = p.matrix().cwiseSqrt();  // amp(y,x) = <y|p_x>
  const Index dim = n * n;
  MatrixXd u = MatrixXd::Zero(dim, dim);
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      const Index col = x * n + y;
      for_each_rs_entry(amp, n, x, y, [&](Index mid, double v) {
        const Index a = mid / n;
        const Index b = mid % n;
        for_each_rs_entry(amp, n, a, b, [&](Index row, double w) { u(row, col) += w * v; });
      });
    }
  }
  MatrixXcd embed = MatrixXcd::Zero(dim, n);
  std::vector<std::size_t> position(static_cast<std::size_t>(dim));
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      embed(x * n + y, x) = amp(y, x);
      position[static_cast<std::size_t>(x * n + y)] = static_cast<std::size_t>(x);
    }
  }
  return DTWalk(DTWalkKind::Szegedy, "szegedy[" + p.label() + "]", u.cast<cd>(), std::move(embed),
                std::move(position), static_cast<std::size_t>(n));
}

VectorXcd szegedy_stationary_state(const MarkovChain& p) {
  const Index n = static_cast<Index>(p.size());
  const auto& pi = p.stationary();
  VectorXcd out = VectorXcd::Zero(n * n);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) out(x * n + y) = std::sqrt(pi(x) * p(static_cast<std::size_t>(y), static_cast<std::size_t>(x)));
  return out;
}

DTWalk hadamard_cycle(int n) {
  if (n < 2) throw InvalidParameter("n", "hadamard_cycle needs n >= 2");
  const Index dim = 2 * static_cast<Index>(n);
  check_cap(static_cast<std::size_t>(dim));
  const double h = 1.0 / std::numbers::sqrt2;
  const double coin[2][2] = {{h, h}, {h, -h}};  // coin[out][in]
  MatrixXcd u = MatrixXcd::Zero(dim, dim);
  for (Index x = 0; x < n; ++x) {
    for (Index c = 0; c < 2; ++c) {
      for (Index c2 = 0; c2 < 2; ++c2) {
        const Index target = c2 == 0 ? (x + n - 1) % n : (x + 1) % n;
        u(2 * target + c2, 2 * x + c) += coin[c2][c];
      }
    }
  }
  MatrixXcd embed = MatrixXcd::Zero(dim, n);
  std::vector<std::size_t> position(static_cast<std::size_t>(dim));
  for (Index x = 0; x < n; ++x) {
    embed(2 * x, x) = cd(h, 0.0);
    embed(2 * x + 1, x) = cd(0.0, h);
    position[static_cast<std::size_t>(2 * x)] = position[static_cast<std::size_t>(2 * x + 1)] = static_cast<std::size_t>(x);
  }
  return DTWalk(DTWalkKind::HadamardCycle, "hadamard_cycle(" + std::to_string(n) + ")", std::move(u),
                std::move(embed), std::move(position), static_cast<std::size_t>(n));
}

DTWalk grover_lattice(int n, int d) {
  if (n < 2) throw InvalidParameter("n", "grover_lattice needs n >= 2");
  if (d < 1) throw InvalidParameter("d", "grover_lattice needs d >= 1");
  Index positions = 1;
  for (int j = 0; j < d; ++j) {
    positions *= n;
    check_cap(static_cast<std::size_t>(positions));
  }
  const Index coins = 2 * d;
  const Index dim = positions * coins;
  check_cap(static_cast<std::size_t>(dim));
  const double off = 2.0 / static_cast<double>(coins);
  MatrixXcd u = MatrixXcd::Zero(dim, dim);
  for (Index x = 0; x < positions; ++x) {
    for (Index c = 0; c < coins; ++c) {
      for (Index c2 = 0; c2 < coins; ++c2) {
        const double g = off - (c2 == c ? 1.0 : 0.0);
        if (g == 0.0) continue;
        const Index axis = c2 / 2;
        const bool plus = c2 % 2 == 0;
        Index stride = 1;
        for (Index j = 0; j < axis; ++j) stride *= n;
        const Index digit = (x / stride) % n;
        const Index moved = plus ? (digit + 1) % n : (digit + n - 1) % n;
        const Index target = x + (moved - digit) * stride;
        const Index flipped = 2 * axis + (plus ? 1 : 0);
        u(target * coins + flipped, x * coins + c) += g;
      }
    }
  }
  MatrixXcd embed = MatrixXcd::Zero(dim, positions);
  std::vector<std::size_t> position(static_cast<std::size_t>(dim));
  const double amp = 1.0 / std::sqrt(static_cast<double>(coins));
  for (Index x = 0; x < positions; ++x) {
    for (Index c = 0; c < coins; ++c) {
      embed(x * coins + c, x) = amp;
      position[static_cast<std::size_t>(x * coins + c)] = static_cast<std::size_t>(x);
    }
  }
  return DTWalk(DTWalkKind::GroverLattice, "grover_lattice(" + std::to_string(n) + "," + std::to_string(d) + ")",
                std::move(u), std::move(embed), std::move(position), static_cast<std::size_t>(positions));
}

DTWalk coined_walk(CoinedKind kind, int n, int d) {
  switch (kind) {
    case CoinedKind::HadamardCycle: return hadamard_cycle(n);
    case CoinedKind::GroverLattice: return grover_lattice(n, d);
  }
  throw InvalidParameter("kind", "unknown coined walk");
}

std::optional<double> phase_gap(const DTWalk& walk) {
  check_cap(walk.walk_dim(), kPhaseGapMaxDim);
  Eigen::ComplexEigenSolver<MatrixXcd> eig(walk.unitary(), false);
  if (eig.info() != Eigen::Success) throw Error("phase_gap: eigensolver did not converge");
  std::optional<double> best;
  for (Index k = 0; k < eig.eigenvalues().size(); ++k) {
    const double phase = std::abs(std::arg(eig.eigenvalues()(k)));
    if (phase > kPhaseTolerance && (!best || phase < *best)) best = phase;
  }
  return best;
}

}  // namespace qwmix
