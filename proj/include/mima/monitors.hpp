#pragma once

#include <string>
#include <vector>

#include "mima/coupling.hpp"
#include "mima/density.hpp"
#include "mima/dynamics.hpp"

namespace mima {

struct MonitorSpec {
  std::vector<double> p_list{2.0, 4.0, 8.0, 16.0};  // kept sorted ascending
  bool track_linf = true;
  bool track_weak_residual = false;
  bool track_energy_identity = true;
};

/// One sampled instant. Spectral norms are exact diagonal sums; the L^p/L-inf
/// entries are grid quadratures of the potential vorticity phi - lap(phi) + g_delta.
struct MonitorRecord {
  double t = 0.0;
  double normV2 = 0.0;      // sum (1+mu) c^2
  double normW2 = 0.0;      // sum [(1+mu) + (1+mu)^2] c^2
  double enstrophy2 = 0.0;  // sum (1+mu)^2 c^2
  std::vector<double> lp;   // ||phi - lap phi + g_delta||_p per p in p_list
  double linf = 0.0;
  double energy_rate = 0.0;  // -2 eps (||grad phi||^2 + ||lap phi||^2) + 2 eps (g, lap phi)
  double energy_residual = 0.0;  // filled post-hoc by finite differencing
  double weak_residual = 0.0;
};

struct MonitorSeries {
  MonitorSpec spec;
  std::vector<MonitorRecord> rows;
};

MonitorRecord record(const SpectralField& state, const DensityField& density,
                     const BasisSamples& bs, const MonitorSpec& spec, double eps = 0.0);

/// Central-difference d/dt normV2 against the spectral energy rate; fills
/// energy_residual on interior rows and returns the max of
/// |residual| / max-scale, where the scale is the largest rate magnitude.
double energy_identity_residual(MonitorSeries& series, double eps);

struct LpBudgetReport {
  double p = 0.0;
  double initial = 0.0;
  double max_ratio = 0.0;  // max over time of lp(t)/lp(0)
  bool violated = false;
};

/// Ratio of the transported L^p functional against its initial value,
/// flagged beyond tolerance tol.
std::vector<LpBudgetReport> check_lp_budget(const MonitorSeries& series, double tol);

/// Residual of the weak form tested against basis modes, computed two ways:
/// the tensor-route rate (1+mu_i) dc_i/dt against independent quadrature of
/// eps grad(phi - lap phi + g).grad e_i - (g - lap phi) perp-grad(phi).grad e_i.
/// test_bs may sample an enriched basis; modes beyond the run's span report
/// the pure quadrature functional (the tensor rate for them is zero).
double weak_residual(const SpectralField& state, const DensityField& density,
                     const CouplingTensors& tensors, const BasisSamples& test_bs,
                     int test_mode_begin, int test_mode_end);

std::string monitors_csv(const MonitorSeries& series);

}  // namespace mima
