#include "qwmix/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qwmix/error.hpp"

namespace qwmix::kernels {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {
constexpr Index kColumnBlock = 64;
constexpr Index kWalkBlock = 8;
// Below this many multiply-adds a parallel region costs more than it saves.
constexpr double kParallelWork = 1 << 18;
}  // namespace

MatrixXd matmul(const MatrixXd& a, const MatrixXd& b) {
  MatrixXd c(a.rows(), b.cols());
  const Index blocks = (b.cols() + kColumnBlock - 1) / kColumnBlock;
  const bool parallel = static_cast<double>(a.rows()) * a.cols() * b.cols() > kParallelWork;
#pragma omp parallel for schedule(static) if (parallel)
  for (Index i = 0; i < blocks; ++i) {
    const Index c0 = i * kColumnBlock;
    const Index w = std::min(kColumnBlock, b.cols() - c0);
    c.middleCols(c0, w).noalias() = a * b.middleCols(c0, w);
  }
  return c;
}

double max_column_tv(const MatrixXd& m, const VectorXd& pi) {
  VectorXd col(m.cols());
  const bool parallel = static_cast<double>(m.size()) > kParallelWork;
#pragma omp parallel for schedule(static) if (parallel)
  for (Index x = 0; x < m.cols(); ++x) col(x) = 0.5 * (m.col(x) - pi).cwiseAbs().sum();
  return m.cols() ? col.maxCoeff() : 0.0;
}

double max_column_tv_reference(const MatrixXd& m, const VectorXd& pi) {
  double worst = 0.0;
  for (Index x = 0; x < m.cols(); ++x) {
    double s = 0.0;
    for (Index y = 0; y < m.rows(); ++y) s += std::abs(m(y, x) - pi(y));
    worst = std::max(worst, 0.5 * s);
  }
  return worst;
}

ThresholdSearch first_time_below(const MatrixXd& p, const VectorXd& pi, double threshold,
                                 long horizon) {
  if (horizon < 1) throw InvalidParameter("horizon", "must be >= 1");
  ThresholdSearch out;
  std::vector<MatrixXd> powers{p};
  std::vector<double> dist{max_column_tv(p, pi)};
  out.trace.emplace_back(1, dist.front());
  if (dist.front() <= threshold) {
    out.time = 1;
    return out;
  }
  while (dist.back() > threshold && powers.size() < 62) {
    const long next = 1L << powers.size();
    if (next > horizon) break;
    powers.push_back(matmul(powers.back(), powers.back()));
    dist.push_back(max_column_tv(powers.back(), pi));
    out.trace.emplace_back(next, dist.back());
  }
  // Largest t <= horizon with f(t) > threshold, one bit at a time.
  long t = 0;
  MatrixXd current;
  for (Index j = static_cast<Index>(powers.size()) - 1; j >= 0; --j) {
    const long cand = t + (1L << j);
    if (cand > horizon) continue;
    if (t == 0) {
      if (dist[j] > threshold) {
        t = cand;
        current = powers[j];
      }
      continue;
    }
    MatrixXd m = matmul(current, powers[j]);
    const double f = max_column_tv(m, pi);
    out.trace.emplace_back(cand, f);
    if (f > threshold) {
      t = cand;
      current = std::move(m);
    }
  }
  if (t < horizon) out.time = t + 1;
  return out;
}

ThresholdSearch first_time_below_reference(const MatrixXd& p, const VectorXd& pi,
                                           double threshold, long horizon) {
  if (horizon < 1) throw InvalidParameter("horizon", "must be >= 1");
  ThresholdSearch out;
  MatrixXd m = p;
  for (long t = 1; t <= horizon; ++t) {
    const double f = max_column_tv_reference(m, pi);
    out.trace.emplace_back(t, f);
    if (f <= threshold) {
      out.time = t;
      break;
    }
    m = p * m;
  }
  return out;
}

void check_monotone(const ThresholdSearch& search, double slack) {
  auto trace = search.trace;
  std::sort(trace.begin(), trace.end());
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (trace[i].second > trace[i - 1].second + slack) {
      throw Error("internal: distance to stationarity increased from " +
                  std::to_string(trace[i - 1].second) + " at t=" + std::to_string(trace[i - 1].first) +
                  " to " + std::to_string(trace[i].second) + " at t=" + std::to_string(trace[i].first));
    }
  }
}

MatrixXd clustered_generated(const MatrixXd& phi, const std::vector<std::vector<std::size_t>>& clusters,
                             const MatrixXd& kernel) {
  const Index n = phi.rows();
  const Index m = static_cast<Index>(clusters.size());
  // kernel is symmetric (PSD for a characteristic function), so
  // b K b^T = sum_j D_j ((b P^T L)_j)^2 with K = P^T L D L^T P. The triangular
  // product halves the O(N M^2) step, and out is symmetric, so only y >= x is built.
  const Eigen::LDLT<MatrixXd> ldlt(kernel);
  if (ldlt.info() != Eigen::Success) throw Error("clustered_generated: kernel factorization failed");
  const VectorXd d = ldlt.vectorD();
  MatrixXd out(n, n);
  const bool parallel = static_cast<double>(n) * n * (n + m * m) > kParallelWork;
#pragma omp parallel if (parallel)
  {
    MatrixXd b(n, m);
    MatrixXd g(n, m);
#pragma omp for schedule(dynamic, 8)
    for (Index x = 0; x < n; ++x) {
      const Index rows = n - x;
      auto bx = b.topRows(rows);
      bx.setZero();
      for (Index j = 0; j < m; ++j) {
        for (auto k : clusters[static_cast<std::size_t>(j)]) {
          const auto kk = static_cast<Index>(k);
          bx.col(j) += phi(x, kk) * phi.col(kk).tail(rows);
        }
      }
      auto gx = g.topRows(rows);
      gx.noalias() = bx * ldlt.transpositionsP().transpose();
      gx = gx * ldlt.matrixL();
      out.col(x).tail(rows) = gx.cwiseAbs2() * d;
    }
  }
  for (Index x = 0; x < n; ++x) out.row(x).tail(n - x - 1) = out.col(x).tail(n - x - 1).transpose();
  return out;
}

MatrixXd spectral_generated_reference(const MatrixXd& phi, const VectorXd& lambda,
                                      const std::function<std::complex<double>(double)>& chi) {
  const Index n = phi.rows();
  MatrixXd k(n, n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) k(a, b) = chi(lambda(a) - lambda(b)).real();
  MatrixXd out(n, n);
  VectorXd amp(n);
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      for (Index a = 0; a < n; ++a) amp(a) = phi(y, a) * phi(x, a);
      double s = 0.0;
      for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b) s += amp(a) * amp(b) * k(a, b);
      out(y, x) = s;
    }
  }
  return out;
}

MatrixXd propagator_squared(const MatrixXd& phi, const VectorXd& lambda, double t) {
  const VectorXd c = (lambda * t).array().cos();
  const VectorXd s = (lambda * t).array().sin();
  const MatrixXd phi_t = phi.transpose();
  const MatrixXd re = matmul(phi * c.asDiagonal(), phi_t);
  const MatrixXd im = matmul(phi * s.asDiagonal(), phi_t);
  return re.cwiseAbs2() + im.cwiseAbs2();
}

MatrixXd dt_generated(const MatrixXcd& u, const MatrixXcd& embed, std::span<const std::size_t> position,
                      std::size_t n_positions, std::span<const double> weights) {
  const Index cols = embed.cols();
  MatrixXd out = MatrixXd::Zero(static_cast<Index>(n_positions), cols);
  const Index blocks = (cols + kWalkBlock - 1) / kWalkBlock;
  const double work = static_cast<double>(u.rows()) * u.cols() * cols * weights.size();
#pragma omp parallel for schedule(static) if (work > kParallelWork)
  for (Index bi = 0; bi < blocks; ++bi) {
    const Index c0 = bi * kWalkBlock;
    const Index w = std::min(kWalkBlock, cols - c0);
    MatrixXcd psi = embed.middleCols(c0, w);
    MatrixXcd next(psi.rows(), w);
    for (std::size_t t = 0; t < weights.size(); ++t) {
      const double wt = weights[t];
      if (wt != 0.0) {
        for (Index c = 0; c < w; ++c)
          for (Index i = 0; i < psi.rows(); ++i)
            out(static_cast<Index>(position[static_cast<std::size_t>(i)]), c0 + c) += wt * std::norm(psi(i, c));
      }
      if (t + 1 < weights.size()) {
        next.noalias() = u * psi;
        psi.swap(next);
      }
    }
  }
  return out;
}

MatrixXd dt_generated_reference(const MatrixXcd& u, const MatrixXcd& embed,
                                std::span<const std::size_t> position, std::size_t n_positions,
                                std::span<const double> weights) {
  MatrixXd out = MatrixXd::Zero(static_cast<Index>(n_positions), embed.cols());
  for (Index x = 0; x < embed.cols(); ++x) {
    Eigen::VectorXcd psi = embed.col(x);
    for (std::size_t t = 0; t < weights.size(); ++t) {
      for (Index i = 0; i < psi.size(); ++i)
        out(static_cast<Index>(position[static_cast<std::size_t>(i)]), x) += weights[t] * std::norm(psi(i));
      if (t + 1 < weights.size()) psi = (u * psi).eval();
    }
  }
  return out;
}

namespace {

void check_cut_size(Index n) {
  if (n > 62) throw InvalidParameter("N", "subset enumeration limited to 62 states");
}

bool better(const CutResult& a, const CutResult& b) {
  return a.phi < b.phi || (a.phi == b.phi && a.set < b.set);
}

constexpr double kHalfMassSlack = 1e-12;

}  // namespace

CutResult min_conductance_cut(const MatrixXd& p, const VectorXd& pi) {
  const Index n = p.rows();
  check_cut_size(n);
  const unsigned long long full = (1ULL << n) - 1;
  CutResult best{std::numeric_limits<double>::infinity(), 0};
#pragma omp parallel
  {
    CutResult local{std::numeric_limits<double>::infinity(), 0};
    std::vector<Index> inside;
    inside.reserve(static_cast<std::size_t>(n));
#pragma omp for schedule(dynamic, 4096)
    for (long long sl = 1; sl < static_cast<long long>(full); ++sl) {
      const auto s = static_cast<unsigned long long>(sl);
      double mass = 0.0;
      inside.clear();
      for (Index x = 0; x < n; ++x) {
        if (s >> x & 1ULL) {
          inside.push_back(x);
          mass += pi(x);
        }
      }
      if (mass > 0.5 + kHalfMassSlack || mass <= 0.0) continue;
      double flow = 0.0;
      for (Index x : inside) {
        double out_of_s = 0.0;
        for (Index y = 0; y < n; ++y)
          if (!(s >> y & 1ULL)) out_of_s += p(y, x);
        flow += pi(x) * out_of_s;
      }
      CutResult cand{flow / mass, s};
      if (better(cand, local)) local = cand;
    }
#pragma omp critical(qwmix_cut)
    if (better(local, best)) best = local;
  }
  return best;
}

CutResult min_conductance_cut_reference(const MatrixXd& p, const VectorXd& pi) {
  const Index n = p.rows();
  check_cut_size(n);
  const unsigned long long full = (1ULL << n) - 1;
  CutResult best{std::numeric_limits<double>::infinity(), 0};
  for (unsigned long long s = 1; s < full; ++s) {
    double mass = 0.0;
    for (Index x = 0; x < n; ++x)
      if (s >> x & 1ULL) mass += pi(x);
    if (mass > 0.5 + kHalfMassSlack || mass <= 0.0) continue;
    // Q(S, S^c) = pi(S) - sum_{x,y in S} pi_x P(y,x)
    double retained = 0.0;
    for (Index x = 0; x < n; ++x) {
      if (!(s >> x & 1ULL)) continue;
      for (Index y = 0; y < n; ++y)
        if (s >> y & 1ULL) retained += pi(x) * p(y, x);
    }
    CutResult cand{(mass - retained) / mass, s};
    if (better(cand, best)) best = cand;
  }
  return best;
}

}  // namespace qwmix::kernels
