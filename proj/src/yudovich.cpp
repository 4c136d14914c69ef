#include "mima/yudovich.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mima/quad1d.hpp"

namespace mima {

double GrowthFunction::operator()(double p) const {
  if (p < 1.0) p = 1.0;
  switch (kind) {
    case Kind::constant:
      return 1.0;
    case Kind::log:
      return std::log1p(p);
    case Kind::power:
      return std::pow(p, beta);
    case Kind::table: {
      if (table.empty()) throw std::invalid_argument("GrowthFunction: empty table");
      if (p <= table.front().first) return table.front().second;
      if (p >= table.back().first) {
        if (p > table.back().first) extrapolated = true;  // flat beyond the grid
        return table.back().second;
      }
      auto hi = std::upper_bound(table.begin(), table.end(), p,
                                 [](double v, const auto& e) { return v < e.first; });
      auto lo = hi - 1;
      const double u = (std::log(p) - std::log(lo->first)) /
                       (std::log(hi->first) - std::log(lo->first));
      return std::exp((1.0 - u) * std::log(lo->second) + u * std::log(hi->second));
    }
  }
  return 1.0;
}

namespace {

constexpr double kEpsLo = 1e-6;
constexpr double kEpsHi = 0.5 - 1e-6;

// ln of the objective (2/eps) theta(2/eps) e^{eps s / 2} at ln(eps) = le
double ln_objective(const GrowthFunction& theta, double s, double le) {
  const double eps = std::exp(le);
  return std::log(2.0 / eps) + std::log(theta(2.0 / eps)) + 0.5 * eps * s;
}

// coarse log-spaced scan then golden-section refinement of the infimum
double minimize_ln(const GrowthFunction& theta, double s) {
  const double la = std::log(kEpsLo), lb = std::log(kEpsHi);
  const int coarse = 96;
  double best = 0.0, best_v = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= coarse; ++i) {
    const double le = la + (lb - la) * i / coarse;
    const double v = ln_objective(theta, s, le);
    if (v < best_v) {
      best_v = v;
      best = le;
    }
  }
  const double span = (lb - la) / coarse;
  double a = std::max(la, best - span), b = std::min(lb, best + span);
  const double gr = 0.6180339887498949;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = ln_objective(theta, s, x1), f2 = ln_objective(theta, s, x2);
  for (int it = 0; it < 200 && (b - a) > 1e-10; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = ln_objective(theta, s, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = ln_objective(theta, s, x2);
    }
  }
  return std::min(f1, f2);
}

}  // namespace

double ln_phi_theta_ln(const GrowthFunction& theta, double s) {
  return minimize_ln(theta, std::max(s, 0.0));
}

double phi_theta(const GrowthFunction& theta, double r) {
  if (r < 0.0) throw std::invalid_argument("phi_theta: r must be >= 0");
  const double s = r < 1.0 ? 0.0 : std::log(r);
  return std::exp(minimize_ln(theta, s));
}

namespace {

// int of ds / Phi(e^s) over [s0, s1] (the Osgood integral in s = ln(1/r))
double osgood_window(const GrowthFunction& theta, double s0, double s1) {
  auto f = [&](double s) { return std::exp(-ln_phi_theta_ln(theta, s)); };
  return adaptive_simpson(f, s0, s1, 1e-12 * (s1 - s0) + 1e-14, 40);
}

}  // namespace

OsgoodReport osgood_test(const GrowthFunction& theta) {
  OsgoodReport rep;

  // the spec'd probe grid: r0 = 1e-2 ... 1e-16
  const double ln100 = std::log(100.0);
  double acc = 0.0;
  for (int k = 1; k <= 8; ++k) {
    const double s_lo = (k - 1) * ln100, s_hi = k * ln100;
    const double inc = osgood_window(theta, s_lo, s_hi);
    acc += inc;
    rep.r0_grid.push_back(std::pow(10.0, -2.0 * k));
    rep.integrals.push_back(acc);
    if (k >= 2) rep.increments.push_back(inc);
  }

  // classification on doubling windows s in [s0 2^k, s0 2^{k+1}]
  const double s0 = ln100;
  const int K = 18;
  for (int k = 0; k < K; ++k)
    rep.window_increments.push_back(osgood_window(theta, s0 * std::pow(2.0, k),
                                                  s0 * std::pow(2.0, k + 1)));

  const int tail_begin = K / 2;
  double ratio_prod = 1.0;
  int ratio_cnt = 0;
  double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
  for (int k = tail_begin; k < K; ++k) {
    const double d = rep.window_increments[static_cast<size_t>(k)];
    mn = std::min(mn, d);
    mx = std::max(mx, d);
    if (k > tail_begin && rep.window_increments[static_cast<size_t>(k - 1)] > 0.0) {
      ratio_prod *= d / rep.window_increments[static_cast<size_t>(k - 1)];
      ++ratio_cnt;
    }
  }
  rep.tail_ratio = ratio_cnt ? std::pow(ratio_prod, 1.0 / ratio_cnt) : 0.0;

  // least-squares slope of ln Delta_k vs ln k on the tail
  {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int k = tail_begin; k < K; ++k) {
      const double d = rep.window_increments[static_cast<size_t>(k)];
      if (d <= 0.0) continue;
      const double x = std::log(static_cast<double>(k + 1)), y = std::log(d);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++cnt;
    }
    rep.decay_exponent =
        cnt >= 2 ? -(cnt * sxy - sx * sy) / (cnt * sxx - sx * sx) : kPInf;
  }

  if (mx <= 1e-300) {
    rep.verdict = OsgoodVerdict::convergent;
    rep.note = "tail increments vanish";
  } else if (rep.tail_ratio <= 0.7) {
    rep.verdict = OsgoodVerdict::convergent;
    rep.note = "geometric decay of increments";
  } else if (mn >= 0.8 * mx) {
    rep.verdict = OsgoodVerdict::divergent;
    rep.note = "increments bounded below (within 20%)";
  } else if (rep.decay_exponent <= 1.05) {
    rep.verdict = OsgoodVerdict::divergent;
    rep.note = "harmonic-or-slower increment decay";
  } else if (rep.decay_exponent >= 1.3) {
    rep.verdict = OsgoodVerdict::convergent;
    rep.note = "super-harmonic increment decay";
  } else {
    rep.verdict = OsgoodVerdict::inconclusive;
    rep.note = "increment decay too close to harmonic to call";
  }
  return rep;
}

YudovichReport yudovich_norm(const std::function<double(double)>& lp_eval,
                             const GrowthFunction& theta, std::span<const double> p_grid) {
  YudovichReport rep;
  for (double p : p_grid) {
    const double np = lp_eval(p);
    rep.p_grid.push_back(p);
    rep.norms.push_back(np);
    rep.ratios.push_back(np / theta(p));
  }
  for (double r : rep.ratios) rep.sup_ratio = std::max(rep.sup_ratio, r);
  const size_t n = rep.ratios.size();
  if (n >= 3)
    rep.increasing_at_top =
        rep.ratios[n - 1] > rep.ratios[n - 2] && rep.ratios[n - 2] > rep.ratios[n - 3];
  return rep;
}

YudovichReport yudovich_norm(const SampledField& f, const GrowthFunction& theta,
                             std::span<const double> p_grid) {
  for (double p : p_grid)
    if (p < 1.0 || p > 64.0)
      throw std::invalid_argument("yudovich_norm: p grid outside [1, 64]");
  return yudovich_norm([&](double p) { return lp_norm(f, p); }, theta, p_grid);
}

double OsgoodEnvelope::at(double ti) const {
  if (t.empty()) throw std::invalid_argument("OsgoodEnvelope: empty curve");
  if (ti <= t.front()) return y.front();
  if (ti >= t.back()) return y.back();
  auto it = std::upper_bound(t.begin(), t.end(), ti);
  const size_t hi = static_cast<size_t>(it - t.begin());
  const size_t lo = hi - 1;
  const double u = (ti - t[lo]) / (t[hi] - t[lo]);
  return std::exp((1.0 - u) * std::log(y[lo]) + u * std::log(y[hi]));
}

OsgoodEnvelope osgood_envelope(const GrowthFunction& theta, double lambda, double y0,
                               double t_end) {
  if (y0 <= 0.0) throw std::invalid_argument("osgood_envelope: y0 must be > 0");
  OsgoodEnvelope env;
  auto f = [&](double yv) {
    const double s = yv < 1.0 ? std::log(1.0 / yv) : 0.0;
    return lambda * yv * std::exp(ln_phi_theta_ln(theta, s));
  };
  double t = 0.0, y = y0;
  double h = t_end / 1024.0;
  env.t.push_back(t);
  env.y.push_back(y);
  const double kMaxY = 1e300;
  while (t < t_end) {
    h = std::min(h, t_end - t);
    const double k1 = f(y);
    const double k2 = f(y + 0.5 * h * k1);
    const double k3 = f(y + 0.5 * h * k2);
    const double k4 = f(y + h * k3);
    const double dy = (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double rel = std::abs(dy) / std::max(y, 1e-300);
    if (rel > 1e-3 && h > 1e-12 * t_end) {
      h *= 0.5;  // keep the relative step change below 1e-3
      continue;
    }
    y += dy;
    t += h;
    env.t.push_back(t);
    env.y.push_back(y);
    if (!(y < kMaxY) || !std::isfinite(y)) {
      env.overflowed = true;
      break;
    }
    if (rel < 2.5e-4) h *= 2.0;
  }
  return env;
}

}  // namespace mima
