#include "qwmix/bessel.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "qwmix/error.hpp"

namespace qwmix {

namespace {
constexpr double kRescaleAbove = 1e250;
constexpr double kRescaleBy = 1e-250;
}  // namespace

double bessel_j(int order, double t) {
  if (std::abs(order) > kBesselMaxOrder) {
    throw InvalidParameter("order", "|order| must be <= " + std::to_string(kBesselMaxOrder));
  }
  if (!(t >= 0.0 && t <= kBesselMaxArgument)) {
    throw InvalidParameter("t", "argument must lie in [0, " + std::to_string(kBesselMaxArgument) + "]");
  }
  const int n = std::abs(order);
  const double sign = (order < 0 && n % 2 == 1) ? -1.0 : 1.0;
  if (t == 0.0) return n == 0 ? 1.0 : 0.0;

  // Start well past the turning point max(n, t); the Airy transition width
  // grows like t^(1/3).
  const double reach = std::max(static_cast<double>(n), t);
  int start = static_cast<int>(reach + 40.0 + 12.0 * std::cbrt(reach));
  start += start % 2;

  double above = 0.0;  // J_{k+1}
  double here = 1e-30; // J_k, arbitrary scale
  double wanted = 0.0;
  double norm = 0.0;   // J_0 + 2 sum J_{2k}, same scale
  for (int k = start; k >= 1; --k) {
    const double below = (2.0 * k / t) * here - above;  // J_{k-1}
    above = here;
    here = below;
    if (std::abs(here) > kRescaleAbove) {
      here *= kRescaleBy;
      above *= kRescaleBy;
      wanted *= kRescaleBy;
      norm *= kRescaleBy;
    }
    const int idx = k - 1;
    if (idx == n) wanted = here;
    if (idx > 0 && idx % 2 == 0) norm += 2.0 * here;
  }
  norm += here;  // J_0
  return sign * wanted / norm;
}

}  // namespace qwmix
