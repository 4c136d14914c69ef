#include "mima/bessel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace mima {

namespace {

// Ascending series sum_s (-1)^s (x/2)^{m+2s} / (s! (m+s)!).
double series_j(int m, double x) {
  const double h = 0.5 * x;
  double term = 1.0;
  for (int i = 1; i <= m; ++i) {
    term *= h / static_cast<double>(i);
    if (term == 0.0) return 0.0;  // underflow: J_m(x) below double range
  }
  const double h2 = h * h;
  double sum = term;
  for (int s = 0; s < 400; ++s) {
    term *= -h2 / (static_cast<double>(s + 1) * static_cast<double>(m + s + 1));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
  }
  return sum;
}

// Backward (Miller) recurrence: computes J_k(x) for k = 0..kmax at once.
// Start index well above both kmax and the turning point k ~ x.
void miller_j(int kmax, double x, std::vector<double>& out) {
  const int top = std::max(kmax, static_cast<int>(x));
  const int start0 = top + 24 + static_cast<int>(std::sqrt(42.0 * (top + 2)));
  const int start = start0 + (start0 & 1);  // even start keeps the norm sum aligned
  out.assign(static_cast<size_t>(kmax) + 1, 0.0);

  double jp1 = 0.0;
  double jk = 1e-300;
  double norm = 0.0;  // J_0 + 2 sum_{k even >= 2} J_k = 1
  for (int k = start; k >= 1; --k) {
    double jm1 = (2.0 * k / x) * jk - jp1;
    jp1 = jk;
    jk = jm1;
    if (k - 1 <= kmax) out[static_cast<size_t>(k - 1)] = jk;
    if (((k - 1) & 1) == 0) norm += (k - 1 == 0) ? jk : 2.0 * jk;
    if (std::abs(jk) > 1e250) {  // rescale to avoid overflow
      const double s = 1e-250;
      jk *= s;
      jp1 *= s;
      norm *= s;
      for (auto& v : out) v *= s;
    }
  }
  for (auto& v : out) v /= norm;
}

double j_at(int m, double x, std::vector<double>& scratch) {
  if (m < 0) {
    double v = j_at(-m, x, scratch);
    return (m & 1) ? -v : v;
  }
  if (x == 0.0) return m == 0 ? 1.0 : 0.0;
  if (x <= m + 2.0) return series_j(m, x);
  miller_j(m, x, scratch);
  return scratch[static_cast<size_t>(m)];
}

// McMahon expansion for j_{m,k}; good for k >= 2 (and any k when m == 0).
double mcmahon_guess(int m, int k) {
  const double pi = 3.14159265358979323846;
  const double b = (k + 0.5 * m - 0.25) * pi;
  const double mu = 4.0 * static_cast<double>(m) * m;
  const double b8 = 8.0 * b;
  double j = b - (mu - 1.0) / b8;
  j -= 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8 * b8 * b8);
  j -= 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) /
       (15.0 * b8 * b8 * b8 * b8 * b8);
  return j;
}

// Olver-type expansion for the first zero of J_m, m >= 1.
double first_zero_guess(int m) {
  const double c = std::cbrt(static_cast<double>(m));
  return m + 1.8557571 * c + 1.033150 / c - 0.00397 / m - 0.0908 / (c * c * c * c * c) +
         0.043 / (c * c * c * c * c * c * c);
}

}  // namespace

double bessel_j(int m, double x) {
  std::vector<double> scratch;
  return j_at(m, x, scratch);
}

std::array<double, 5> bessel_j_window(int m, double x) {
  std::array<double, 5> w{};
  if (x == 0.0) {
    for (int d = -2; d <= 2; ++d) w[static_cast<size_t>(d + 2)] = (m + d == 0) ? 1.0 : 0.0;
    return w;
  }
  if (x > m + 4.0) {
    // one Miller sweep covers all five orders
    std::vector<double> all;
    miller_j(m + 2, x, all);
    for (int d = -2; d <= 2; ++d) {
      int k = m + d;
      double v = (k >= 0) ? all[static_cast<size_t>(k)]
                          : ((-k & 1) ? -all[static_cast<size_t>(-k)] : all[static_cast<size_t>(-k)]);
      w[static_cast<size_t>(d + 2)] = v;
    }
    return w;
  }
  std::vector<double> scratch;
  for (int d = -2; d <= 2; ++d) w[static_cast<size_t>(d + 2)] = j_at(m + d, x, scratch);
  return w;
}

double bessel_j_prime(int m, double x) {
  if (m == 0) return -bessel_j(1, x);
  auto w = bessel_j_window(m, x);
  return 0.5 * (w[1] - w[3]);
}

double bessel_zero(int m, int k) {
  if (m < 0 || m > kBesselZeroMaxOrder || k < 1 || k > kBesselZeroMaxIndex)
    throw std::out_of_range("bessel_zero: (m,k) outside table bounds m<=60, k<=200");

  const double pi = 3.14159265358979323846;
  double x = (k == 1 && m >= 1) ? first_zero_guess(m) : mcmahon_guess(m, k);

  // Bracket the zero around the guess so Newton cannot escape to a neighbor.
  std::vector<double> scratch;
  double lo = std::max(x - 0.6 * pi, m > 0 ? static_cast<double>(m) : 0.5);
  double hi = x + 0.6 * pi;
  double flo = j_at(m, lo, scratch);
  double fhi = j_at(m, hi, scratch);
  int guard = 0;
  while (flo * fhi > 0.0 && guard++ < 64) {
    // widen downhill; zeros are ~pi apart so a couple of steps suffice
    lo = std::max(lo - 0.5 * pi, m > 0 ? static_cast<double>(m) * 0.5 : 1e-8);
    hi += 0.5 * pi;
    flo = j_at(m, lo, scratch);
    fhi = j_at(m, hi, scratch);
  }
  if (flo * fhi > 0.0) throw std::runtime_error("bessel_zero: failed to bracket");

  for (int it = 0; it < 100; ++it) {
    double f = j_at(m, x, scratch);
    double fp = (m == 0) ? -j_at(1, x, scratch)
                         : 0.5 * (j_at(m - 1, x, scratch) - j_at(m + 1, x, scratch));
    double step = f / fp;
    double xn = x - step;
    if (!(xn > lo && xn < hi)) {  // fall back to bisection inside the bracket
      xn = 0.5 * (lo + hi);
      step = x - xn;
    }
    if (f * flo <= 0.0) {
      hi = x;
    } else {
      lo = x;
      flo = f;
    }
    x = xn;
    if (std::abs(step) <= 1e-13 * x) {
      // one polishing Newton step
      double ff = j_at(m, x, scratch);
      double fp2 = (m == 0) ? -j_at(1, x, scratch)
                            : 0.5 * (j_at(m - 1, x, scratch) - j_at(m + 1, x, scratch));
      x -= ff / fp2;
      return x;
    }
  }
  return x;
}

}  // namespace mima
