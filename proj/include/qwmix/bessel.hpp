#pragma once

namespace qwmix {

inline constexpr int kBesselMaxOrder = 512;
inline constexpr double kBesselMaxArgument = 1024.0;

/// Integer-order Bessel function of the first kind J_order(t) for
/// |order| <= 512 and 0 <= t <= 1024, by Miller's downward recurrence
/// normalized with J_0 + 2 sum_k J_2k = 1. J_{-n} = (-1)^n J_n.
/// Throws InvalidParameter outside the supported domain.
double bessel_j(int order, double t);

}  // namespace qwmix
