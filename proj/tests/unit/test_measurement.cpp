#include <doctest.h>

#include <numbers>

#include "qwmix/error.hpp"
#include "qwmix/measurement.hpp"

using namespace qwmix;
using cd = std::complex<double>;

namespace {

std::vector<MeasurementRule> all_rules() {
  return {MeasurementRule::delta(3.5), MeasurementRule::uniform_ct(2.0), MeasurementRule::exponential(4.0),
          MeasurementRule::uniform_dt(6), MeasurementRule::geometric(5.0)};
}

// E[e^{i theta t}] summed from the pmf.
cd from_pmf(const MeasurementRule& r, double theta) {
  const auto w = r.discrete_weights();
  cd s = 0;
  for (std::size_t t = 0; t < w.weights.size(); ++t) s += w.weights[t] * std::exp(cd(0, theta * t));
  return s;
}

}  // namespace

TEST_CASE("characteristic function at zero is exactly one") {
  for (const auto& r : all_rules()) {
    CAPTURE(r.to_string());
    CHECK(r.characteristic(0.0) == cd(1.0, 0.0));
  }
}

TEST_CASE("characteristic function closed forms") {
  const auto u = MeasurementRule::uniform_ct(3.0);
  CHECK(std::abs(u.characteristic(2 * std::numbers::pi / 3.0)) <= 1e-15);
  const auto e = MeasurementRule::exponential(4.0);
  const cd v = e.characteristic(0.25);
  CHECK(std::abs(v - 1.0 / cd(1, -1)) <= 1e-15);
  CHECK(std::abs(v) == doctest::Approx(1 / std::sqrt(2.0)));
  const auto d = MeasurementRule::delta(2.5);
  CHECK(std::abs(d.characteristic(0.7) - std::exp(cd(0, 0.7 * 2.5))) <= 1e-15);
  // uniform_ct near its removable singularity
  CHECK(std::abs(u.characteristic(1e-12) - 1.0) <= 1e-11);
}

TEST_CASE("discrete characteristic functions match their pmfs") {
  for (const auto& r : {MeasurementRule::uniform_dt(7), MeasurementRule::geometric(3.0),
                        MeasurementRule::geometric(1.0), MeasurementRule::uniform_dt(1)}) {
    for (double theta : {0.3, 1.0, 2 * std::numbers::pi, 2 * std::numbers::pi / 7, 1e-9, -2.2}) {
      CAPTURE(r.to_string());
      CAPTURE(theta);
      CHECK(std::abs(r.characteristic(theta) - from_pmf(r, theta)) <= 1e-9);
    }
  }
}

TEST_CASE("continuous characteristic functions match quadrature") {
  for (double T : {0.5, 2.0}) {
    for (double theta : {0.4, 3.0}) {
      // midpoint rule for the uniform law, Laguerre-free truncated rule for the exponential
      const int m = 200000;
      cd uni = 0, ex = 0;
      for (int i = 0; i < m; ++i) {
        const double t = (i + 0.5) * T / m;
        uni += std::exp(cd(0, theta * t)) / static_cast<double>(m);
      }
      const double top = 60 * T, h = top / m;
      for (int i = 0; i < m; ++i) {
        const double t = (i + 0.5) * h;
        ex += std::exp(cd(0, theta * t)) * std::exp(-t / T) / T * h;
      }
      CHECK(std::abs(MeasurementRule::uniform_ct(T).characteristic(theta) - uni) <= 1e-8);
      CHECK(std::abs(MeasurementRule::exponential(T).characteristic(theta) - ex) <= 1e-6);
    }
  }
}

TEST_CASE("discrete weights") {
  const auto u = MeasurementRule::uniform_dt(5).discrete_weights();
  CHECK(u.weights.size() == 5);
  CHECK(u.tail_mass == 0.0);
  for (double w : u.weights) CHECK(w == doctest::Approx(0.2));

  const auto g = MeasurementRule::geometric(4.0, 1e-10);
  const auto w = g.discrete_weights();
  CHECK(w.weights.size() == static_cast<std::size_t>(std::ceil(4.0 * std::log(1e10))) + 1);
  double sum = 0;
  for (double x : w.weights) sum += x;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(w.tail_mass > 0);
  CHECK(w.tail_mass <= 1e-10);
  CHECK(w.weights[1] / w.weights[0] == doctest::Approx(0.75));

  const auto d = MeasurementRule::delta(3).discrete_weights();
  CHECK(d.weights.size() == 4);
  CHECK(d.weights[3] == 1.0);
  CHECK_THROWS_AS(MeasurementRule::uniform_ct(2).discrete_weights(), InvalidParameter);
  CHECK_THROWS_AS(MeasurementRule::delta(2.5).discrete_weights(), InvalidParameter);
}

TEST_CASE("rule pairing and parameters") {
  CHECK(MeasurementRule::delta(1).usable_in_continuous_time());
  CHECK(MeasurementRule::delta(1).usable_in_discrete_time());
  CHECK_FALSE(MeasurementRule::uniform_ct(1).usable_in_discrete_time());
  CHECK_FALSE(MeasurementRule::geometric(2).usable_in_continuous_time());
  CHECK_FALSE(MeasurementRule::delta(1).is_smooth());
  CHECK(MeasurementRule::exponential(1).is_smooth());
  CHECK_THROWS_AS(MeasurementRule::uniform_ct(0.0), InvalidParameter);
  CHECK_THROWS_AS(MeasurementRule::uniform_dt(0), InvalidParameter);
  CHECK_THROWS_AS(MeasurementRule::geometric(0.5), InvalidParameter);
  CHECK_THROWS_AS(MeasurementRule::delta(-1.0), InvalidParameter);
  CHECK(MeasurementRule::make(RuleFamily::Exponential, 2.0).family() == RuleFamily::Exponential);
  CHECK(parse_rule_family("uniform_dt") == RuleFamily::UniformDT);
  CHECK_THROWS_AS(parse_rule_family("poisson"), InvalidParameter);
  CHECK(MeasurementRule::uniform_ct(5).to_string() == "uniform_ct(T=5)");
}

TEST_CASE("sampling follows the distribution") {
  std::mt19937_64 rng(99);
  for (const auto& r : all_rules()) {
    const int m = 200000;
    double mean = 0;
    for (int i = 0; i < m; ++i) mean += r.sample(rng) / m;
    const double want = -std::imag(r.characteristic(1e-6)) / -1e-6;  // chi'(0) = i E[t]
    CAPTURE(r.to_string());
    CHECK(mean == doctest::Approx(want).epsilon(0.02));
  }
}
