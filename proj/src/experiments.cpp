#include "mima/experiments.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <future>
#include <stdexcept>

#include "mima/io.hpp"

namespace mima {

namespace fs = std::filesystem;
using nlohmann::json;

double GaussianRng::normal() {
  if (have_) {
    have_ = false;
    return cached_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * 3.14159265358979323846 * u2;
  cached_ = r * std::sin(a);
  have_ = true;
  return r * std::cos(a);
}

void RunConfig::validate() const {
  if (n_modes < 1) throw std::invalid_argument("config: n_modes must be >= 1");
  if (eps < 0.0) throw std::invalid_argument("config: eps must be >= 0");
  if (density.singular() && delta <= 0.0)
    throw std::invalid_argument(
        "config: singular density (eta = 0) must be regularized before entering the "
        "tensors; set delta > 0");
  if (delta < 0.0) throw std::invalid_argument("config: delta must be >= 0");
  if (integrator.dt <= 0.0 || integrator.t_end <= 0.0 || integrator.dt > integrator.t_end)
    throw std::invalid_argument("config: need 0 < dt <= t_end");
  if (ic.kind == InitialCondition::Kind::file && !fs::exists(ic.path))
    throw std::invalid_argument("config: initial-condition file does not exist: " + ic.path);
}

SpectralField make_initial_condition(const RunConfig& cfg, const BasisSet& basis) {
  SpectralField f;
  f.basis = &basis;
  f.c.assign(static_cast<size_t>(basis.size()), 0.0);
  switch (cfg.ic.kind) {
    case InitialCondition::Kind::zero:
      break;
    case InitialCondition::Kind::single_mode: {
      if (cfg.ic.mode_index < 0 || cfg.ic.mode_index >= basis.size())
        throw std::invalid_argument("initial condition: mode index out of range");
      f.c[static_cast<size_t>(cfg.ic.mode_index)] = cfg.ic.amplitude;
      break;
    }
    case InitialCondition::Kind::random_band: {
      GaussianRng rng(cfg.seed);
      double w2 = 0.0;
      for (int i = 0; i < basis.size(); ++i) {
        const double mu = basis.modes[static_cast<size_t>(i)].mu;
        double z = rng.normal();  // draw for every mode: band edits keep the stream aligned
        if (mu >= cfg.ic.mu_min && mu <= cfg.ic.mu_max) {
          f.c[static_cast<size_t>(i)] = z;
          w2 += ((1.0 + mu) + (1.0 + mu) * (1.0 + mu)) * z * z;
        }
      }
      if (w2 > 0.0) {
        const double scale = cfg.ic.w_norm / std::sqrt(w2);
        for (auto& v : f.c) v *= scale;
      }
      break;
    }
    case InitialCondition::Kind::file:
      f.c = read_coeff_file(cfg.ic.path, basis.size());
      break;
  }
  if (cfg.ic.smoother_eps > 0.0) f = smooth_initial_field(f, cfg.ic.smoother_eps);
  return f;
}

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::future<void>> pend;
  int next = 0;
  while (next < count) {
    pend.clear();
    for (int t = 0; t < threads && next < count; ++t, ++next)
      pend.push_back(std::async(std::launch::async, fn, next));
    for (auto& p : pend) p.get();
  }
}

double norm_v2(const BasisSet& basis, std::span<const double> c) {
  double s = 0.0;
  for (int i = 0; i < basis.size(); ++i) {
    const double om = 1.0 + basis.modes[static_cast<size_t>(i)].mu;
    s += om * c[static_cast<size_t>(i)] * c[static_cast<size_t>(i)];
  }
  return s;
}

double dist_v2_common(const BasisSet& coarse, std::span<const double> a,
                      std::span<const double> b) {
  double s = 0.0;
  for (int i = 0; i < coarse.size(); ++i) {
    const double om = 1.0 + coarse.modes[static_cast<size_t>(i)].mu;
    const double d = a[static_cast<size_t>(i)] - b[static_cast<size_t>(i)];
    s += om * d * d;
  }
  return s;
}

}  // namespace

RunArtifacts run_in_memory(const RunConfig& cfg) {
  cfg.validate();
  RunArtifacts art;
  art.basis = std::make_unique<BasisSet>(build_basis(cfg.geometry, cfg.n_modes));
  art.grid = std::make_unique<QuadratureGrid>(make_grid(cfg.geometry, *art.basis));
  art.samples = std::make_unique<BasisSamples>(sample_basis(*art.basis, *art.grid, true));

  SampledField g = sample_log_density(cfg.density, *art.grid);
  const double delta = cfg.delta > 0.0 ? cfg.delta : 1e-12;
  art.density = std::make_unique<DensityField>(
      cfg.truncate ? truncate_regularize(g, *art.samples, delta)
                   : regularize_density(g, *art.samples, delta));
  art.density->spec = cfg.density;

  art.tensors = std::make_unique<CouplingTensors>(assemble_triads(*art.basis, *art.samples));
  assemble_rhs_data(*art.tensors, *art.density, cfg.eps);

  SpectralField phi0 = make_initial_condition(cfg, *art.basis);

  art.monitors.spec = cfg.monitors;
  auto on_sample = [&](const SpectralField& s) {
    MonitorRecord r = record(s, *art.density, *art.samples, cfg.monitors, cfg.eps);
    if (cfg.monitors.track_weak_residual)
      r.weak_residual = weak_residual(s, *art.density, *art.tensors, *art.samples, 0,
                                      art.basis->size());
    art.monitors.rows.push_back(std::move(r));
  };
  art.trajectory = integrate(phi0, *art.tensors, cfg.integrator, on_sample);
  art.energy_residual_rel = energy_identity_residual(art.monitors, cfg.eps);
  return art;
}

json config_to_json(const RunConfig& cfg) {
  json j;
  j["geometry"] = {{"kind", cfg.geometry.kind == DomainKind::disk ? "disk" : "square"},
                   {"radius", cfg.geometry.radius},
                   {"side", cfg.geometry.side}};
  const char* prof = cfg.density.profile == ProfileKind::power_law ? "power_law"
                     : cfg.density.profile == ProfileKind::gaussian ? "gaussian"
                                                                    : "constant";
  j["density"] = {{"profile", prof},     {"alpha", cfg.density.alpha},
                  {"sigma", cfg.density.sigma}, {"c", cfg.density.c},
                  {"eta", cfg.density.eta},     {"delta", cfg.delta},
                  {"truncate", cfg.truncate}};
  const char* ick = cfg.ic.kind == InitialCondition::Kind::zero          ? "zero"
                    : cfg.ic.kind == InitialCondition::Kind::single_mode ? "single_mode"
                    : cfg.ic.kind == InitialCondition::Kind::random_band ? "random_band"
                                                                         : "file";
  j["initial"] = {{"kind", ick},
                  {"mode_index", cfg.ic.mode_index},
                  {"amplitude", cfg.ic.amplitude},
                  {"mu_min", cfg.ic.mu_min},
                  {"mu_max", cfg.ic.mu_max},
                  {"w_norm", cfg.ic.w_norm},
                  {"path", cfg.ic.path},
                  {"smoother_eps", cfg.ic.smoother_eps}};
  j["integrator"] = {{"scheme", cfg.integrator.scheme == Scheme::if_rk4 ? "if_rk4" : "rk4"},
                     {"dt", cfg.integrator.dt},
                     {"t_end", cfg.integrator.t_end},
                     {"sample_every", cfg.integrator.sample_every}};
  j["monitors"] = {{"p_list", cfg.monitors.p_list},
                   {"track_linf", cfg.monitors.track_linf},
                   {"track_weak_residual", cfg.monitors.track_weak_residual}};
  j["n_modes"] = cfg.n_modes;
  j["eps"] = cfg.eps;
  j["seed"] = cfg.seed;
  j["dump_tensors"] = cfg.dump_tensors;
  return j;
}

json run(const RunConfig& cfg, const std::string& out_dir) {
  cfg.validate();
  fs::create_directories(out_dir);
  json manifest;
  manifest["version"] = kVersion;
  manifest["config"] = config_to_json(cfg);

  auto t0 = std::chrono::steady_clock::now();
  RunArtifacts art = run_in_memory(cfg);
  manifest["timings_ms"]["total"] = ms_since(t0);

  const std::string basis_csv = basis_table_csv(*art.basis);
  manifest["basis_checksum"] = fnv1a_hex(basis_csv.data(), basis_csv.size());
  {
    std::string blob;
    blob.reserve(art.tensors->triads.size() * sizeof(TriadEntry));
    for (const auto& e : art.tensors->triads)
      blob.append(reinterpret_cast<const char*>(&e), sizeof e);
    manifest["tensor_checksum"] = fnv1a_hex(blob.data(), blob.size());
  }

  std::vector<std::string> files;
  write_text_file(out_dir + "/monitors.csv", monitors_csv(art.monitors));
  files.push_back("monitors.csv");
  if (!art.trajectory.samples.empty()) {
    write_snapshot(art.trajectory.samples.front(), out_dir + "/snapshot_initial.hms");
    write_snapshot(art.trajectory.samples.back(), out_dir + "/snapshot_final.hms");
    files.push_back("snapshot_initial.hms");
    files.push_back("snapshot_final.hms");
  }
  if (cfg.dump_tensors) {
    dump_triads(*art.tensors, out_dir + "/tensors.hmt");
    files.push_back("tensors.hmt");
  }

  manifest["status"] = art.trajectory.aborted ? "aborted" : "ok";
  if (art.trajectory.aborted) manifest["error"] = art.trajectory.error;
  manifest["warnings"] = art.trajectory.warnings;
  manifest["energy_residual_rel"] = art.energy_residual_rel;
  manifest["files"] = json::array();
  for (const auto& f : files) {
    const std::string path = out_dir + "/" + f;
    manifest["files"].push_back(
        {{"name", f}, {"bytes", fs::file_size(path)}, {"fnv1a", file_checksum(path)}});
  }
  write_text_file(out_dir + "/manifest.json", manifest.dump(2) + "\n");
  return manifest;
}

json converge_n(const RunConfig& cfg, const std::vector<int>& n_list) {
  if (n_list.size() < 2) throw std::invalid_argument("converge_n: need >= 2 entries");
  for (size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      throw std::invalid_argument("converge_n: n_list must be ascending");

  std::vector<RunArtifacts> runs(n_list.size());
  for (size_t k = 0; k < n_list.size(); ++k) {
    RunConfig c = cfg;
    c.n_modes = n_list[k];
    runs[k] = run_in_memory(c);
  }

  json rep;
  rep["n_list"] = n_list;
  rep["budgets"] = json::array();
  for (size_t k = 0; k < runs.size(); ++k) {
    json b;
    b["n"] = n_list[k];
    for (auto& r : check_lp_budget(runs[k].monitors, 0.0))
      b["max_ratio_p" + std::to_string(static_cast<int>(r.p))] = r.max_ratio;
    rep["budgets"].push_back(b);
  }
  rep["distances_v"] = json::array();
  std::vector<double> dists;
  for (size_t k = 0; k + 1 < runs.size(); ++k) {
    const auto& a = runs[k].trajectory.samples.back();
    const auto& b = runs[k + 1].trajectory.samples.back();
    const double d = std::sqrt(dist_v2_common(*runs[k].basis, a.c, b.c));
    dists.push_back(d);
    rep["distances_v"].push_back({{"n_coarse", n_list[k]}, {"n_fine", n_list[k + 1]}, {"d", d}});
  }
  bool monotone = true;
  for (size_t k = 0; k + 1 < dists.size(); ++k)
    if (dists[k + 1] > 1.1 * dists[k]) monotone = false;
  rep["monotone_within_10pct"] = monotone;
  if (dists.size() >= 2 && dists.back() > 0.0)
    rep["spectral_slope_log2"] = std::log2(dists[dists.size() - 2] / dists.back());
  return rep;
}

json eps_sweep(const RunConfig& cfg, const std::vector<double>& eps_list, int threads) {
  if (eps_list.empty()) throw std::invalid_argument("eps_sweep: empty list");
  for (size_t i = 1; i < eps_list.size(); ++i)
    if (!(eps_list[i] < eps_list[i - 1]) || eps_list[i] <= 0.0)
      throw std::invalid_argument("eps_sweep: list must be descending positive");

  std::vector<RunArtifacts> runs(eps_list.size());
  parallel_for(static_cast<int>(eps_list.size()), threads, [&](int k) {
    RunConfig c = cfg;
    c.eps = eps_list[static_cast<size_t>(k)];
    runs[static_cast<size_t>(k)] = run_in_memory(c);
  });

  json rep;
  rep["eps_list"] = eps_list;
  rep["cauchy_distances_v"] = json::array();
  std::vector<double> dists;
  for (size_t k = 0; k + 1 < runs.size(); ++k) {
    const double d = std::sqrt(dist_v2_common(*runs[k].basis,
                                              runs[k].trajectory.samples.back().c,
                                              runs[k + 1].trajectory.samples.back().c));
    dists.push_back(d);
    rep["cauchy_distances_v"].push_back(d);
  }
  bool dec = true;
  for (size_t k = 0; k + 1 < dists.size(); ++k)
    if (dists[k + 1] > 1.1 * dists[k]) dec = false;
  rep["cauchy_decreasing_within_10pct"] = dec;

  // V-bound margin per run: ||phi0||_V^2 + (t/2)||g_delta||_2^2 - ||phi(t)||_V^2 >= 0
  rep["v_bound_margins"] = json::array();
  for (size_t k = 0; k < runs.size(); ++k) {
    double g2 = 0.0;
    for (double gv : runs[k].density->gamma) g2 += gv * gv;
    const double v0 = runs[k].monitors.rows.front().normV2;
    double margin = kPInf;
    for (const auto& row : runs[k].monitors.rows)
      margin = std::min(margin, v0 + 0.5 * row.t * g2 - row.normV2);
    rep["v_bound_margins"].push_back({{"eps", eps_list[k]}, {"margin", margin}});
  }

  // eps -> 0 weak residual of the limit candidate
  {
    const auto& last = runs.back();
    CouplingTensors t0 = *last.tensors;  // eps = 0 weak form
    t0.eps = 0.0;
    rep["limit_weak_residual"] =
        weak_residual(last.trajectory.samples.back(), *last.density, t0, *last.samples, 0,
                      last.basis->size());
  }
  return rep;
}

json delta_sweep(const RunConfig& cfg, const std::vector<double>& delta_list, int threads) {
  if (delta_list.empty()) throw std::invalid_argument("delta_sweep: empty list");
  std::vector<RunArtifacts> runs(delta_list.size());
  parallel_for(static_cast<int>(delta_list.size()), threads, [&](int k) {
    RunConfig c = cfg;
    c.delta = delta_list[static_cast<size_t>(k)];
    runs[static_cast<size_t>(k)] = run_in_memory(c);
  });

  json rep;
  rep["delta_list"] = delta_list;
  rep["g_convergence"] = json::array();
  for (size_t k = 0; k < runs.size(); ++k) {
    json e;
    e["delta"] = delta_list[k];
    SampledField diff = runs[k].density->g_delta_sampled;
    for (size_t q = 0; q < diff.v.size(); ++q) diff.v[q] -= runs[k].density->g_sampled.v[q];
    for (double p : cfg.monitors.p_list)
      e["gdelta_minus_g_p" + std::to_string(static_cast<int>(p))] = lp_norm(diff, p);
    e["gdelta_linf"] = lp_norm(runs[k].density->g_delta_sampled, kPInf);
    e["g_linf"] = lp_norm(runs[k].density->g_sampled, kPInf);
    rep["g_convergence"].push_back(e);
  }
  rep["terminal_distances_v"] = json::array();
  std::vector<double> dists;
  for (size_t k = 0; k + 1 < runs.size(); ++k) {
    const double d = std::sqrt(dist_v2_common(*runs[k].basis,
                                              runs[k].trajectory.samples.back().c,
                                              runs[k + 1].trajectory.samples.back().c));
    dists.push_back(d);
    rep["terminal_distances_v"].push_back(d);
  }
  bool dec = true;
  for (size_t k = 0; k + 1 < dists.size(); ++k)
    if (dists[k + 1] > 1.1 * dists[k]) dec = false;
  rep["terminal_decreasing_within_10pct"] = dec;
  return rep;
}

json twin(const RunConfig& cfg, const std::vector<double>& scales,
          const GrowthFunction& theta) {
  for (size_t i = 0; i < scales.size(); ++i)
    if (scales[i] < 0.0 || (i > 0 && scales[i] >= scales[i - 1]))
      throw std::invalid_argument("twin: scales must be positive descending");

  RunArtifacts base = run_in_memory(cfg);
  const int n = base.basis->size();
  SpectralField phi0 = make_initial_condition(cfg, *base.basis);

  // one W-normalized perturbation direction, reused across scales
  GaussianRng rng(cfg.seed + 0x9e3779b9ull);
  std::vector<double> z(static_cast<size_t>(n));
  double w2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double om = 1.0 + base.basis->modes[static_cast<size_t>(i)].mu;
    z[static_cast<size_t>(i)] = rng.normal();
    w2 += (om + om * om) * z[static_cast<size_t>(i)] * z[static_cast<size_t>(i)];
  }
  for (auto& v : z) v /= std::sqrt(w2);

  json rep;
  rep["scales"] = scales;
  rep["pairs"] = json::array();
  for (double s : scales) {
    json e;
    e["scale"] = s;
    SpectralField p0 = phi0;
    for (int i = 0; i < n; ++i) p0.c[static_cast<size_t>(i)] += s * z[static_cast<size_t>(i)];
    Trajectory tb = integrate(p0, *base.tensors, cfg.integrator);

    std::vector<double> ts, ys;
    for (size_t k = 0; k < tb.samples.size() && k < base.trajectory.samples.size(); ++k) {
      const auto& a = base.trajectory.samples[k];
      const auto& b = tb.samples[k];
      ts.push_back(a.t);
      ys.push_back(dist_v2_common(*base.basis, a.c, b.c));
    }
    e["t"] = ts;
    e["y"] = ys;
    e["y_end"] = ys.back();
    e["y_end_over_s2"] = s > 0.0 ? ys.back() / (s * s) : 0.0;

    if (s > 0.0 && ys.size() >= 2 && ys.front() > 0.0) {
      const double ydot0 = (ys[1] - ys[0]) / (ts[1] - ts[0]);
      const double phi0v = phi_theta(theta, 1.0 / ys[0]);
      double lam = ydot0 / (ys[0] * phi0v);
      lam = std::max(lam, 1e-6);
      e["lambda_fit"] = lam;
      OsgoodEnvelope env = osgood_envelope(theta, lam, ys[0] * 1.1, ts.back());
      double min_margin = kPInf;
      std::vector<double> envs;
      for (size_t k = 0; k < ts.size(); ++k) {
        const double ev = env.at(ts[k]);
        envs.push_back(ev);
        min_margin = std::min(min_margin, ev - ys[k]);
      }
      e["envelope"] = envs;
      e["envelope_min_margin"] = min_margin;
      e["below_envelope"] = min_margin >= 0.0;
    }
    rep["pairs"].push_back(e);
  }

  // empirical order of Y(t_end)^(1/2) in s
  {
    std::vector<double> ls, ly;
    for (const auto& e : rep["pairs"]) {
      const double s = e["scale"].get<double>();
      const double ye = e["y_end"].get<double>();
      if (s > 0.0 && ye > 0.0) {
        ls.push_back(std::log(s));
        ly.push_back(0.5 * std::log(ye));
      }
    }
    if (ls.size() >= 2) {
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (size_t i = 0; i < ls.size(); ++i) {
        sx += ls[i];
        sy += ly[i];
        sxx += ls[i] * ls[i];
        sxy += ls[i] * ly[i];
      }
      const double m = static_cast<double>(ls.size());
      rep["empirical_order"] = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    }
  }
  return rep;
}

json cz_study(const BasisSet& basis, const QuadratureGrid& grid,
              const std::vector<double>& p_list, int trials, uint64_t seed) {
  for (double p : p_list)
    if (p < 2.0 || p > 64.0)
      throw std::invalid_argument("cz_study: p_list must lie in [2, 64]");
  BasisSamples bs = sample_basis(basis, grid, true, true);
  const int n = basis.size();
  const int nodes = bs.nodes;
  GaussianRng rng(seed);

  std::vector<std::vector<double>> max_r(p_list.size());
  json rep;
  rep["p_list"] = p_list;
  std::vector<double> worst(p_list.size(), 0.0);
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<double> c(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
      c[static_cast<size_t>(i)] =
          rng.normal() / (1.0 + basis.modes[static_cast<size_t>(i)].mu);

    // samples of phi, grad phi, hessian phi, and phi - lap phi
    std::vector<double> v(nodes, 0.0), gx(nodes, 0.0), gy(nodes, 0.0), hxx(nodes, 0.0),
        hxy(nodes, 0.0), hyy(nodes, 0.0), vort(nodes, 0.0);
    for (int i = 0; i < n; ++i) {
      const double ci = c[static_cast<size_t>(i)];
      const double om = 1.0 + basis.modes[static_cast<size_t>(i)].mu;
      const size_t off = static_cast<size_t>(i) * nodes;
      for (int q = 0; q < nodes; ++q) {
        v[static_cast<size_t>(q)] += ci * bs.value[off + q];
        gx[static_cast<size_t>(q)] += ci * bs.gx[off + q];
        gy[static_cast<size_t>(q)] += ci * bs.gy[off + q];
        hxx[static_cast<size_t>(q)] += ci * bs.hxx[off + q];
        hxy[static_cast<size_t>(q)] += ci * bs.hxy[off + q];
        hyy[static_cast<size_t>(q)] += ci * bs.hyy[off + q];
        vort[static_cast<size_t>(q)] += ci * om * bs.value[off + q];
      }
    }
    for (size_t ip = 0; ip < p_list.size(); ++ip) {
      const double p = p_list[ip];
      std::vector<double> tw(static_cast<size_t>(nodes)), tv(static_cast<size_t>(nodes));
      for (int q = 0; q < nodes; ++q) {
        const size_t sq = static_cast<size_t>(q);
        const double gn = std::hypot(gx[sq], gy[sq]);
        const double hn =
            std::sqrt(hxx[sq] * hxx[sq] + 2.0 * hxy[sq] * hxy[sq] + hyy[sq] * hyy[sq]);
        tw[sq] = grid.w[sq] * (std::pow(std::abs(v[sq]), p) + std::pow(gn, p) +
                               std::pow(hn, p));
        tv[sq] = grid.w[sq] * std::pow(std::abs(vort[sq]), p);
      }
      const double w2p = std::pow(pairwise_sum(tw), 1.0 / p);
      const double vp = std::pow(pairwise_sum(tv), 1.0 / p);
      const double r = w2p / (p * vp);
      worst[ip] = std::max(worst[ip], r);
    }
  }
  rep["max_ratio"] = worst;
  bool no_growth = true;
  for (size_t ip = 0; ip + 1 < worst.size(); ++ip)
    if (worst[ip + 1] > 1.1 * worst[ip]) no_growth = false;
  rep["no_growth_trend_10pct"] = no_growth;
  rep["trials"] = trials;
  return rep;
}

json osgood_report_json(const OsgoodReport& rep) {
  json j;
  j["verdict"] = rep.verdict == OsgoodVerdict::divergent    ? "divergent"
                 : rep.verdict == OsgoodVerdict::convergent ? "convergent"
                                                            : "inconclusive";
  j["uniqueness_guaranteed"] = rep.verdict == OsgoodVerdict::divergent;
  j["r0_grid"] = rep.r0_grid;
  j["integrals"] = rep.integrals;
  j["increments"] = rep.increments;
  j["window_increments"] = rep.window_increments;
  j["tail_ratio"] = rep.tail_ratio;
  j["decay_exponent"] = rep.decay_exponent;
  j["note"] = rep.note;
  return j;
}

}  // namespace mima
