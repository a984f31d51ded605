#include "qwmix/measurement.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qwmix/error.hpp"

namespace qwmix {

using cd = std::complex<double>;

std::string to_string(RuleFamily family) {
  switch (family) {
    case RuleFamily::Delta: return "delta";
    case RuleFamily::UniformCT: return "uniform_ct";
    case RuleFamily::Exponential: return "exponential";
    case RuleFamily::UniformDT: return "uniform_dt";
    case RuleFamily::Geometric: return "geometric";
  }
  return "delta";
}

RuleFamily parse_rule_family(const std::string& name) {
  if (name == "delta") return RuleFamily::Delta;
  if (name == "uniform_ct") return RuleFamily::UniformCT;
  if (name == "exponential") return RuleFamily::Exponential;
  if (name == "uniform_dt") return RuleFamily::UniformDT;
  if (name == "geometric") return RuleFamily::Geometric;
  throw InvalidParameter("rule", "unknown measurement family '" + name + "'");
}

MeasurementRule MeasurementRule::delta(double horizon) {
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) throw InvalidParameter("T", "delta rule needs T >= 0");
  return {RuleFamily::Delta, horizon, 0.0};
}

MeasurementRule MeasurementRule::uniform_ct(double horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidParameter("T", "uniform_ct needs T > 0");
  return {RuleFamily::UniformCT, horizon, 0.0};
}

MeasurementRule MeasurementRule::exponential(double horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidParameter("T", "exponential needs T > 0");
  return {RuleFamily::Exponential, horizon, 0.0};
}

MeasurementRule MeasurementRule::uniform_dt(long horizon) {
  if (horizon < 1) throw InvalidParameter("T", "uniform_dt needs integer T >= 1");
  return {RuleFamily::UniformDT, static_cast<double>(horizon), 0.0};
}

MeasurementRule MeasurementRule::geometric(double horizon, double tail_tolerance) {
  if (!(horizon >= 1.0) || !std::isfinite(horizon)) throw InvalidParameter("T", "geometric needs T >= 1");
  if (!(tail_tolerance > 0.0 && tail_tolerance < 1.0)) {
    throw InvalidParameter("tail_tolerance", "must lie in (0,1)");
  }
  return {RuleFamily::Geometric, horizon, tail_tolerance};
}

MeasurementRule MeasurementRule::make(RuleFamily family, double horizon, double tail_tolerance) {
  switch (family) {
    case RuleFamily::Delta: return delta(horizon);
    case RuleFamily::UniformCT: return uniform_ct(horizon);
    case RuleFamily::Exponential: return exponential(horizon);
    case RuleFamily::UniformDT:
      if (horizon != std::floor(horizon)) throw InvalidParameter("T", "uniform_dt needs an integer T");
      return uniform_dt(static_cast<long>(horizon));
    case RuleFamily::Geometric: return geometric(horizon, tail_tolerance);
  }
  throw InvalidParameter("rule", "unknown family");
}

bool MeasurementRule::usable_in_continuous_time() const {
  return family_ == RuleFamily::Delta || family_ == RuleFamily::UniformCT ||
         family_ == RuleFamily::Exponential;
}

bool MeasurementRule::usable_in_discrete_time() const {
  if (family_ == RuleFamily::Delta) return horizon_ == std::floor(horizon_);
  return family_ == RuleFamily::UniformDT || family_ == RuleFamily::Geometric;
}

namespace {

// (e^{iz} - 1) / (iz), with the series near z = 0.
cd phase_average(double z) {
  if (std::abs(z) < 1e-4) {
    const double z2 = z * z;
    return {1.0 - z2 / 6.0 + z2 * z2 / 120.0, z / 2.0 - z * z2 / 24.0};
  }
  return (std::exp(cd(0.0, z)) - 1.0) / cd(0.0, z);
}

}  // namespace

cd MeasurementRule::characteristic(double theta) const {
  if (theta == 0.0) return {1.0, 0.0};
  const double T = horizon_;
  switch (family_) {
    case RuleFamily::Delta: return std::exp(cd(0.0, theta * T));
    case RuleFamily::UniformCT: return phase_average(theta * T);
    case RuleFamily::Exponential: return 1.0 / cd(1.0, -theta * T);
    case RuleFamily::UniformDT: {
      // (1/T) sum_{t<T} e^{i theta t}; singular where e^{i theta} = 1.
      const double wrapped = std::remainder(theta, 2.0 * std::numbers::pi);
      if (std::abs(wrapped) < 1e-12) return {1.0, 0.0};
      // Dirichlet-kernel form; the plain geometric-sum quotient cancels badly
      // for small theta.
      const double ratio = std::sin(0.5 * T * wrapped) / (T * std::sin(0.5 * wrapped));
      return ratio * std::exp(cd(0.0, 0.5 * (T - 1.0) * wrapped));
    }
    case RuleFamily::Geometric: {
      const double p = 1.0 / T;
      return p / (1.0 - (1.0 - p) * std::exp(cd(0.0, theta)));
    }
  }
  return {1.0, 0.0};
}

DiscreteWeights MeasurementRule::discrete_weights() const {
  DiscreteWeights out;
  switch (family_) {
    case RuleFamily::Delta: {
      if (horizon_ != std::floor(horizon_)) throw InvalidParameter("T", "discrete delta needs an integer T");
      out.weights.assign(static_cast<std::size_t>(horizon_) + 1, 0.0);
      out.weights.back() = 1.0;
      return out;
    }
    case RuleFamily::UniformDT: {
      const auto n = static_cast<std::size_t>(horizon_);
      out.weights.assign(n, 1.0 / static_cast<double>(n));
      return out;
    }
    case RuleFamily::Geometric: {
      const double p = 1.0 / horizon_;
      const auto t_max = static_cast<std::size_t>(std::ceil(horizon_ * std::log(1.0 / tail_tolerance_)));
      out.weights.resize(t_max + 1);
      double w = p;
      double kept = 0.0;
      for (auto& x : out.weights) {
        x = w;
        kept += w;
        w *= 1.0 - p;
      }
      out.tail_mass = std::max(0.0, 1.0 - kept);
      for (auto& x : out.weights) x /= kept;
      return out;
    }
    default: break;
  }
  throw InvalidParameter("rule", to_string() + " has no discrete pmf");
}

double MeasurementRule::sample(std::mt19937_64& rng) const {
  switch (family_) {
    case RuleFamily::Delta: return horizon_;
    case RuleFamily::UniformCT: return std::uniform_real_distribution<double>(0.0, horizon_)(rng);
    case RuleFamily::Exponential: return std::exponential_distribution<double>(1.0 / horizon_)(rng);
    case RuleFamily::UniformDT:
      return static_cast<double>(std::uniform_int_distribution<long>(0, static_cast<long>(horizon_) - 1)(rng));
    case RuleFamily::Geometric: return static_cast<double>(std::geometric_distribution<long>(1.0 / horizon_)(rng));
  }
  return horizon_;
}

std::string MeasurementRule::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << qwmix::to_string(family_) << "(T=" << horizon_ << ")";
  return os.str();
}

}  // namespace qwmix
