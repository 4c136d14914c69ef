#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mima/quadrature.hpp"

namespace mima {

/// Growth function theta(p), positive and non-decreasing on [1, inf).
/// Table entries are interpolated log-linearly and extrapolated flat beyond
/// the last point (flagged).
struct GrowthFunction {
  enum class Kind { constant, log, power, table };
  Kind kind = Kind::constant;
  double beta = 1.0;                              // power: theta(p) = p^beta
  std::vector<std::pair<double, double>> table;   // sorted by p
  mutable bool extrapolated = false;

  double operator()(double p) const;

  static GrowthFunction constant() { return {}; }
  static GrowthFunction log_growth() { return {Kind::log, 1.0, {}, false}; }
  static GrowthFunction power(double beta) { return {Kind::power, beta, {}, false}; }
};

/// Phi_theta(r): inf over eps in (0,1/2) of (2/eps) theta(2/eps) [r^{eps/2}],
/// the r-power present only for r >= 1. Log-spaced scan plus golden-section
/// refinement in log eps, relative tolerance 1e-8.
double phi_theta(const GrowthFunction& theta, double r);

/// log Phi_theta(e^s) for s >= 0 without forming e^s (s may be huge).
double ln_phi_theta_ln(const GrowthFunction& theta, double s);

enum class OsgoodVerdict { divergent, convergent, inconclusive };

struct OsgoodReport {
  OsgoodVerdict verdict = OsgoodVerdict::inconclusive;
  // spec'd probe grid r0 = 1e-2, 1e-4, ..., 1e-16 and I(r0) = int_{r0}^1 dr/(r Phi(1/r))
  std::vector<double> r0_grid;
  std::vector<double> integrals;
  std::vector<double> increments;        // I(r0/100) - I(r0)
  // classification data: increments over doubling windows in s = ln(1/r)
  std::vector<double> window_increments;
  double tail_ratio = 0.0;               // geometric-mean ratio of tail increments
  double decay_exponent = 0.0;           // q in Delta_k ~ k^{-q} on the tail
  std::string note;
};

/// Divergence probe for the Osgood condition int_0^1 dr/(r Phi_theta(1/r)) = inf.
/// Numerically:
///   - geometric decay of the doubling-window increments (ratio <= 0.7) => convergent
///   - increments bounded below by a positive constant (within 20%)      => divergent
///   - otherwise fit Delta_k ~ k^{-q}: q <= 1.05 divergent, q >= 1.3 convergent,
///     in between inconclusive.
OsgoodReport osgood_test(const GrowthFunction& theta);

struct YudovichReport {
  std::vector<double> p_grid;
  std::vector<double> norms;    // ||f||_p
  std::vector<double> ratios;   // ||f||_p / theta(p)
  double sup_ratio = 0.0;
  bool increasing_at_top = false;  // flags likely non-membership
};

/// sup_p ||f||_p / theta(p) over a p grid, from an arbitrary norm evaluator.
YudovichReport yudovich_norm(const std::function<double(double)>& lp_eval,
                             const GrowthFunction& theta, std::span<const double> p_grid);

/// Grid-quadrature variant for sampled fields (p_grid restricted to [1, 64]).
YudovichReport yudovich_norm(const SampledField& f, const GrowthFunction& theta,
                             std::span<const double> p_grid);

struct OsgoodEnvelope {
  std::vector<double> t, y;
  bool overflowed = false;

  double at(double ti) const;  // linear interpolation in log y
};

/// Integrate dY/dt = lambda Y Phi_theta(1/Y), Y(0) = y0 > 0, with RK4 and a
/// step size adapted to keep the relative change per step below 1e-3.
/// Overflow truncates the curve with a flag.
OsgoodEnvelope osgood_envelope(const GrowthFunction& theta, double lambda, double y0,
                               double t_end);

}  // namespace mima
