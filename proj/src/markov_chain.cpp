#include "qwmix/markov_chain.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>

#include "qwmix/error.hpp"
#include "qwmix/markov_analysis.hpp"

namespace qwmix {

struct MarkovChain::Cache {
  std::once_flag once;
  Eigen::VectorXd pi;
  std::exception_ptr error;
};

namespace {
constexpr double kColumnSumTol = 1e-10;
constexpr double kNegativeClamp = -1e-14;
}  // namespace

MarkovChain::MarkovChain(Eigen::MatrixXd entries, std::string label)
    : p_(std::move(entries)), label_(std::move(label)), cache_(std::make_shared<Cache>()) {
  if (p_.rows() != p_.cols() || p_.rows() == 0) {
    throw InvalidParameter("entries", "chain matrix must be square and non-empty");
  }
  for (Eigen::Index x = 0; x < p_.cols(); ++x) {
    double sum = 0.0;
    for (Eigen::Index y = 0; y < p_.rows(); ++y) {
      double& v = p_(y, x);
      if (!std::isfinite(v)) throw InvalidParameter("entries", "non-finite entry");
      if (v < 0.0) {
        if (v < kNegativeClamp) {
          throw InvalidParameter("entries", "negative entry " + std::to_string(v) + " at (" +
                                                std::to_string(y) + "," + std::to_string(x) + ")");
        }
        v = 0.0;
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kColumnSumTol) {
      throw InvalidParameter("entries", "column " + std::to_string(x) + " sums to " +
                                            std::to_string(sum));
    }
  }
}

MarkovChain MarkovChain::uniform_projector(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return MarkovChain(Eigen::MatrixXd::Constant(k, k, 1.0 / static_cast<double>(n)), "u1^T");
}

MarkovChain MarkovChain::identity(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return MarkovChain(Eigen::MatrixXd::Identity(k, k), "I");
}

bool MarkovChain::is_symmetric(double tol) const {
  for (Eigen::Index x = 0; x < p_.cols(); ++x)
    for (Eigen::Index y = x + 1; y < p_.rows(); ++y)
      if (std::abs(p_(y, x) - p_(x, y)) > tol) return false;
  return true;
}

const Eigen::VectorXd& MarkovChain::stationary() const {
  std::call_once(cache_->once, [this] {
    try {
      cache_->pi = stationary_distribution(*this);
    } catch (...) {
      cache_->error = std::current_exception();
    }
  });
  if (cache_->error) std::rethrow_exception(cache_->error);
  return cache_->pi;
}

void write_chain_csv(const MarkovChain& chain, std::ostream& out) {
  const auto& p = chain.matrix();
  out << "# column-stochastic N=" << chain.size() << '\n';
  char buf[32];
  for (Eigen::Index y = 0; y < p.rows(); ++y) {
    for (Eigen::Index x = 0; x < p.cols(); ++x) {
      std::snprintf(buf, sizeof buf, "%.17g", p(y, x));
      if (x) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

MarkovChain read_chain_csv(std::istream& in, std::string label) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidParameter("csv", "empty input");
  const std::string prefix = "# column-stochastic N=";
  if (line.rfind(prefix, 0) != 0) throw InvalidParameter("csv", "missing header '" + prefix + "<N>'");
  long long n = 0;
  try {
    n = std::stoll(line.substr(prefix.size()));
  } catch (const std::exception&) {
    throw InvalidParameter("csv", "unreadable N in header");
  }
  if (n <= 0) throw InvalidParameter("csv", "N must be positive");
  Eigen::MatrixXd p(n, n);
  for (Eigen::Index y = 0; y < n; ++y) {
    if (!std::getline(in, line)) throw InvalidParameter("csv", "expected " + std::to_string(n) + " rows");
    std::istringstream ls(line);
    std::string cell;
    Eigen::Index x = 0;
    while (std::getline(ls, cell, ',')) {
      if (x >= n) throw InvalidParameter("csv", "too many columns in row " + std::to_string(y));
      try {
        p(y, x++) = std::stod(cell);
      } catch (const std::exception&) {
        throw InvalidParameter("csv", "bad number '" + cell + "'");
      }
    }
    if (x != n) throw InvalidParameter("csv", "row " + std::to_string(y) + " has " + std::to_string(x) + " columns");
  }
  return MarkovChain(std::move(p), std::move(label));
}

}  // namespace qwmix
