#pragma once

#include <array>

namespace mima {

/// Bessel function of the first kind J_m(x) for integer order m >= 0, x >= 0.
/// Ascending series for x <= m+2, backward (Miller) recurrence otherwise.
double bessel_j(int m, double x);

/// J_{m-2..m+2}(x) in one sweep (negative orders folded via J_{-k} = (-1)^k J_k).
/// Index 0 holds J_{m-2}, index 4 holds J_{m+2}.
std::array<double, 5> bessel_j_window(int m, double x);

/// First derivative J_m'(x).
double bessel_j_prime(int m, double x);

/// k-th positive zero j_{m,k} of J_m. Newton iteration from a McMahon (k >= 2)
/// or Olver-type (k == 1) initial guess, safeguarded by bracketing.
/// Table bounds: m <= 60, k <= 200; out of range throws std::out_of_range.
double bessel_zero(int m, int k);

inline constexpr int kBesselZeroMaxOrder = 60;
inline constexpr int kBesselZeroMaxIndex = 200;

}  // namespace mima
