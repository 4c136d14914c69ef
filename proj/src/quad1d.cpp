#include "mima/quad1d.hpp"

#include <cmath>

namespace mima {

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

double tanh_sinh_01(const std::function<double(double)>& f, double t_max, double h) {
  const double pi_half = 1.57079632679489661923;
  // x(t) = 1/(1 + e^{-2s}), s = (pi/2) sinh t. The abscissa nearest 0 is
  // formed as e^{2s}/(1+e^{2s}) so the singular endpoint keeps full relative
  // precision down to the double range.
  double sum = 0.0;
  const int nmax = static_cast<int>(t_max / h);
  for (int i = -nmax; i <= nmax; ++i) {
    const double t = i * h;
    const double s = pi_half * std::sinh(t);
    const double a = std::abs(s);
    if (a > 350.0 && s > 0.0) continue;  // x rounds to 1, weight negligible there
    const double e = std::exp(-2.0 * a);  // underflows to 0 only at the x->0 end
    if (s <= 0.0 && e == 0.0) continue;
    const double x = (s >= 0.0) ? 1.0 / (1.0 + e) : e / (1.0 + e);
    const double w = pi_half * std::cosh(t) * 2.0 * e / ((1.0 + e) * (1.0 + e));
    if (x <= 0.0 || x >= 1.0 || w == 0.0) continue;
    sum += w * f(x);
  }
  return sum * h;
}

}  // namespace mima
