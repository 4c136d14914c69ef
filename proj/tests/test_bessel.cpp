#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "mima/bessel.hpp"

using namespace mima;

namespace {

// Independent oracle: bisection on sign changes of the standard library's
// cyl_bessel_j (different evaluation path and different root finder).
double bisect_zero(int m, int k) {
  double x = m + 1e-3;
  const double step = 0.05;
  double prev = std::cyl_bessel_j(m, x);
  int found = 0;
  while (x < 2000.0) {
    x += step;
    const double cur = std::cyl_bessel_j(m, x);
    if (prev == 0.0 || (prev > 0) != (cur > 0)) {
      ++found;
      if (found == k) {
        double lo = x - step, hi = x;
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double fm = std::cyl_bessel_j(m, mid);
          if ((fm > 0) == (std::cyl_bessel_j(m, lo) > 0))
            lo = mid;
          else
            hi = mid;
          if (hi - lo < 1e-14 * mid) break;
        }
        return 0.5 * (lo + hi);
      }
    }
    prev = cur;
  }
  FAIL("bisection oracle ran off the table");
  return 0.0;
}

}  // namespace

TEST_CASE("bessel_zero matches frozen references") {
  CHECK(bessel_zero(0, 1) == doctest::Approx(2.404825557695773).epsilon(1e-14));
  CHECK(bessel_zero(1, 1) == doctest::Approx(3.831705970207512).epsilon(1e-14));
  CHECK(bessel_zero(0, 2) == doctest::Approx(5.520078110286311).epsilon(1e-14));
}

TEST_CASE("bessel_zero agrees with the bisection oracle") {
  for (int m : {0, 1, 2, 5, 10, 25, 60})
    for (int k : {1, 2, 3, 7, 20}) {
      const double ours = bessel_zero(m, k);
      const double ref = bisect_zero(m, k);
      CHECK(std::abs(ours - ref) <= 1e-12 * std::max(1.0, ref));
    }
}

TEST_CASE("bessel_zero strictly increasing in k") {
  for (int m : {0, 3, 17, 60}) {
    double prev = 0.0;
    for (int k = 1; k <= 40; ++k) {
      const double j = bessel_zero(m, k);
      CHECK(j > prev);
      prev = j;
    }
  }
}

TEST_CASE("bessel_zero rejects out-of-table indices") {
  CHECK_THROWS_AS(bessel_zero(61, 1), std::out_of_range);
  CHECK_THROWS_AS(bessel_zero(0, 201), std::out_of_range);
  CHECK_THROWS_AS(bessel_zero(-1, 1), std::out_of_range);
  CHECK_THROWS_AS(bessel_zero(0, 0), std::out_of_range);
}

TEST_CASE("bessel_j matches the standard library across the working range") {
  double worst = 0.0;
  for (int m = 0; m <= 16; ++m)
    for (double x = 0.05; x < 40.0; x += 0.37)
      worst = std::max(worst, std::abs(bessel_j(m, x) - std::cyl_bessel_j(m, x)));
  CHECK(worst < 1e-12);
}

TEST_CASE("bessel_j_window is consistent with single evaluations") {
  for (int m : {0, 1, 2, 9})
    for (double x : {0.3, 2.7, 11.0, 34.5}) {
      auto w = bessel_j_window(m, x);
      for (int d = -2; d <= 2; ++d) {
        const int k = m + d;
        const double ref =
            k >= 0 ? bessel_j(k, x) : ((-k) & 1 ? -bessel_j(-k, x) : bessel_j(-k, x));
        CHECK(w[static_cast<size_t>(d + 2)] == doctest::Approx(ref).epsilon(1e-13));
      }
    }
}
