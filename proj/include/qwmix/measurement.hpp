#pragma once

#include <complex>
#include <random>
#include <string>
#include <vector>

namespace qwmix {

enum class RuleFamily { Delta, UniformCT, Exponential, UniformDT, Geometric };

std::string to_string(RuleFamily family);
RuleFamily parse_rule_family(const std::string& name);

/// Truncated discrete-time pmf over t = 0 .. weights.size()-1.
struct DiscreteWeights {
  std::vector<double> weights;
  /// Probability mass dropped before renormalization.
  double tail_mass = 0.0;
};

/// Distribution of the time at which the walk is fully measured.
///
/// Continuous families: delta (point mass at T), uniform_ct on [0,T],
/// exponential with mean T. Discrete families: delta at integer T,
/// uniform_dt on {0..T-1}, geometric with p = 1/T on {0,1,...}.
class MeasurementRule {
 public:
  static MeasurementRule delta(double horizon);
  static MeasurementRule uniform_ct(double horizon);
  static MeasurementRule exponential(double horizon);
  static MeasurementRule uniform_dt(long horizon);
  static MeasurementRule geometric(double horizon, double tail_tolerance = 1e-10);
  /// Builds by family name; `horizon` must suit the family.
  static MeasurementRule make(RuleFamily family, double horizon, double tail_tolerance = 1e-10);

  RuleFamily family() const { return family_; }
  double horizon() const { return horizon_; }
  double tail_tolerance() const { return tail_tolerance_; }

  /// Delta is usable by both walk types; the rest belong to exactly one.
  bool usable_in_continuous_time() const;
  bool usable_in_discrete_time() const;
  /// chi(theta) -> 0 as T -> infinity for theta != 0; false only for delta.
  bool is_smooth() const { return family_ != RuleFamily::Delta; }

  /// E[e^{i theta t}] in closed form.
  std::complex<double> characteristic(double theta) const;

  /// Discrete pmf; geometric is cut at ceil(T ln(1/tail_tolerance)) and
  /// renormalized. Throws for continuous families.
  DiscreteWeights discrete_weights() const;

  /// Draws one measurement time.
  double sample(std::mt19937_64& rng) const;

  std::string to_string() const;

 private:
  MeasurementRule(RuleFamily family, double horizon, double tail_tolerance)
      : family_(family), horizon_(horizon), tail_tolerance_(tail_tolerance) {}

  RuleFamily family_;
  double horizon_;
  double tail_tolerance_;
};

inline std::complex<double> characteristic_function(const MeasurementRule& rule, double theta) {
  return rule.characteristic(theta);
}

}  // namespace qwmix
