#include "mima/monitors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "mima/dynamics.hpp"

namespace mima {

namespace {

std::string format_p(double p) {
  char buf[32];
  if (p == static_cast<long>(p))
    std::snprintf(buf, sizeof(buf), "%ld", static_cast<long>(p));
  else
    std::snprintf(buf, sizeof(buf), "%g", p);
  return buf;
}

}  // namespace

MonitorRecord record(const SpectralField& state, const DensityField& density,
                     const BasisSamples& bs, const MonitorSpec& spec, double eps) {
  const int n = static_cast<int>(state.c.size());
  if (bs.basis != state.basis) throw std::invalid_argument("record: basis mismatch");

  MonitorRecord r;
  r.t = state.t;
  for (int i = 0; i < n; ++i) {
    const double mu = state.basis->modes[static_cast<size_t>(i)].mu;
    const double c = state.c[static_cast<size_t>(i)];
    const double om = 1.0 + mu;
    r.normV2 += om * c * c;
    r.enstrophy2 += om * om * c * c;
  }
  r.normW2 = r.normV2 + r.enstrophy2;

  // potential vorticity phi - lap phi + g_delta, sampled spectrally
  std::vector<double> b(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double mu = state.basis->modes[static_cast<size_t>(i)].mu;
    b[static_cast<size_t>(i)] = (1.0 + mu) * state.c[static_cast<size_t>(i)] +
                                (density.gamma.empty() ? 0.0 : density.gamma[static_cast<size_t>(i)]);
  }
  SampledField q = synthesize(bs, b);
  r.lp.reserve(spec.p_list.size());
  for (double p : spec.p_list) r.lp.push_back(lp_norm(q, p));
  if (spec.track_linf) r.linf = lp_norm(q, kPInf);

  if (spec.track_energy_identity) {
    double grad2 = 0.0, lap2 = 0.0, g_lap = 0.0;
    for (int i = 0; i < n; ++i) {
      const double mu = state.basis->modes[static_cast<size_t>(i)].mu;
      const double c = state.c[static_cast<size_t>(i)];
      grad2 += mu * c * c;
      lap2 += mu * mu * c * c;
      if (!density.gamma.empty()) g_lap -= density.gamma[static_cast<size_t>(i)] * mu * c;
    }
    r.energy_rate = -2.0 * eps * (grad2 + lap2) + 2.0 * eps * g_lap;
  }
  return r;
}

double energy_identity_residual(MonitorSeries& series, double /*eps*/) {
  auto& rows = series.rows;
  if (rows.size() < 3) return 0.0;
  double scale = 0.0;
  for (const auto& r : rows) scale = std::max(scale, std::abs(r.energy_rate));
  if (scale == 0.0) scale = 1.0;
  double worst = 0.0;
  for (size_t k = 1; k + 1 < rows.size(); ++k) {
    const double dt = rows[k + 1].t - rows[k - 1].t;
    const double fd = (rows[k + 1].normV2 - rows[k - 1].normV2) / dt;
    rows[k].energy_residual = std::abs(fd - rows[k].energy_rate);
    worst = std::max(worst, rows[k].energy_residual);
  }
  return worst / scale;
}

std::vector<LpBudgetReport> check_lp_budget(const MonitorSeries& series, double tol) {
  std::vector<LpBudgetReport> out;
  if (series.rows.empty()) throw std::invalid_argument("check_lp_budget: empty series");
  for (size_t ip = 0; ip < series.spec.p_list.size(); ++ip) {
    LpBudgetReport rep;
    rep.p = series.spec.p_list[ip];
    rep.initial = series.rows.front().lp[ip];
    double mx = 0.0;
    for (const auto& r : series.rows) mx = std::max(mx, r.lp[ip]);
    rep.max_ratio = rep.initial > 0.0 ? mx / rep.initial : (mx > 0.0 ? kPInf : 1.0);
    rep.violated = rep.max_ratio > 1.0 + tol;
    out.push_back(rep);
  }
  return out;
}

double weak_residual(const SpectralField& state, const DensityField& density,
                     const CouplingTensors& tensors, const BasisSamples& test_bs,
                     int test_mode_begin, int test_mode_end) {
  const int n = static_cast<int>(state.c.size());
  if (test_bs.n < n) throw std::invalid_argument("weak_residual: test basis too small");
  if (test_bs.gx.empty()) throw std::invalid_argument("weak_residual: need gradients");
  const int nodes = test_bs.nodes;
  const auto& w = test_bs.grid->w;

  // field samples over the run span
  std::vector<double> gxf(static_cast<size_t>(nodes), 0.0), gyf(static_cast<size_t>(nodes), 0.0);
  std::vector<double> gxphi(static_cast<size_t>(nodes), 0.0), gyphi(static_cast<size_t>(nodes), 0.0);
  std::vector<double> s_field(static_cast<size_t>(nodes), 0.0);  // g_delta - lap phi
  for (int l = 0; l < n; ++l) {
    const double mu = state.basis->modes[static_cast<size_t>(l)].mu;
    const double c = state.c[static_cast<size_t>(l)];
    const double gam = density.gamma.empty() ? 0.0 : density.gamma[static_cast<size_t>(l)];
    const double a = (1.0 + mu) * c + gam;  // coeff of phi - lap phi + g
    const double s = gam + mu * c;          // coeff of g - lap phi
    const size_t off = static_cast<size_t>(l) * nodes;
    for (int qk = 0; qk < nodes; ++qk) {
      const size_t q = static_cast<size_t>(qk);
      gxf[q] += a * test_bs.gx[off + q];
      gyf[q] += a * test_bs.gy[off + q];
      gxphi[q] += c * test_bs.gx[off + q];
      gyphi[q] += c * test_bs.gy[off + q];
      s_field[q] += s * test_bs.value[off + q];
    }
  }

  // tensor-route rates over the run span
  std::vector<double> dc(static_cast<size_t>(n));
  rhs(tensors, state.c, dc);

  double worst = 0.0;
  std::vector<double> t(static_cast<size_t>(nodes));
  for (int i = test_mode_begin; i < test_mode_end; ++i) {
    const size_t off = static_cast<size_t>(i) * nodes;
    for (int qk = 0; qk < nodes; ++qk) {
      const size_t q = static_cast<size_t>(qk);
      const double q1 = gxf[q] * test_bs.gx[off + q] + gyf[q] * test_bs.gy[off + q];
      const double q2 = s_field[q] * (gxphi[q] * test_bs.gy[off + q] -
                                      gyphi[q] * test_bs.gx[off + q]);
      t[q] = w[q] * (tensors.eps * q1 - q2);
    }
    const double form = pairwise_sum(t);
    double rate = 0.0;
    if (i < n) {
      const double mu = state.basis->modes[static_cast<size_t>(i)].mu;
      rate = (1.0 + mu) * dc[static_cast<size_t>(i)];
    }
    worst = std::max(worst, std::abs(rate + form));
  }
  return worst;
}

std::string monitors_csv(const MonitorSeries& series) {
  std::string s = "t,normV2,normW2,enstrophy2";
  for (double p : series.spec.p_list) s += ",lp" + format_p(p);
  s += ",linf,energy_residual,weak_residual\n";
  char buf[64];
  for (const auto& r : series.rows) {
    auto put = [&](double v, bool lead_comma = true) {
      std::snprintf(buf, sizeof(buf), "%s%.17g", lead_comma ? "," : "", v);
      s += buf;
    };
    put(r.t, false);
    put(r.normV2);
    put(r.normW2);
    put(r.enstrophy2);
    for (double v : r.lp) put(v);
    put(r.linf);
    put(r.energy_residual);
    put(r.weak_residual);
    s += "\n";
  }
  return s;
}

}  // namespace mima
