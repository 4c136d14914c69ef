// Command-line front end: config-driven runs, convergence and regularization
// sweeps, twin-run stability probes, Osgood classification, and the
// Calderon-Zygmund growth study. All outputs are plot-ready CSV/JSON.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mima/experiments.hpp"
#include "mima/io.hpp"

namespace {

struct CliState {
  mima::RunConfig cfg;
  std::string geometry_kind = "disk";
  std::string density_profile = "power_law";
  std::string ic_kind = "single_mode";
  std::string scheme = "if_rk4";
  std::string out_dir = "out";
  int threads = 1;
};

void add_run_options(CLI::App* app, CliState& st) {
  app->add_option("--geometry.kind", st.geometry_kind, "domain: disk or square")
      ->check(CLI::IsMember({"disk", "square"}));
  app->add_option("--geometry.radius", st.cfg.geometry.radius, "disk radius");
  app->add_option("--geometry.side", st.cfg.geometry.side, "square side");
  app->add_option("-n,--n-modes", st.cfg.n_modes, "Galerkin modes");

  app->add_option("--density.profile", st.density_profile,
                  "power_law | gaussian | constant")
      ->check(CLI::IsMember({"power_law", "gaussian", "constant"}));
  app->add_option("--density.alpha", st.cfg.density.alpha, "power-law exponent");
  app->add_option("--density.sigma", st.cfg.density.sigma, "gaussian width");
  app->add_option("--density.c", st.cfg.density.c, "constant level");
  app->add_option("--density.eta", st.cfg.density.eta,
                  "density floor; eta=0 is the singular case");
  app->add_option("--density.delta", st.cfg.delta, "regularization parameter delta");
  app->add_flag("--density.truncate", st.cfg.truncate,
                "clip g to [-1/delta,1/delta] before the elliptic solve (p<2 path)");

  app->add_option("--initial.kind", st.ic_kind, "zero | single_mode | random_band | file")
      ->check(CLI::IsMember({"zero", "single_mode", "random_band", "file"}));
  app->add_option("--initial.mode-index", st.cfg.ic.mode_index, "mode for single_mode");
  app->add_option("--initial.amplitude", st.cfg.ic.amplitude, "amplitude for single_mode");
  app->add_option("--initial.mu-min", st.cfg.ic.mu_min, "random_band lower mu");
  app->add_option("--initial.mu-max", st.cfg.ic.mu_max, "random_band upper mu");
  app->add_option("--initial.w-norm", st.cfg.ic.w_norm, "random_band W-norm target");
  app->add_option("--initial.path", st.cfg.ic.path, "coefficient file for kind=file");
  app->add_option("--initial.smoother-eps", st.cfg.ic.smoother_eps,
                  "initial-data smoother strength (0 disables)");

  app->add_option("--eps", st.cfg.eps, "fourth-order regularization strength");

  app->add_option("--integrator.scheme", st.scheme, "if_rk4 | rk4")
      ->check(CLI::IsMember({"if_rk4", "rk4"}));
  app->add_option("--integrator.dt", st.cfg.integrator.dt, "time step");
  app->add_option("--integrator.t-end", st.cfg.integrator.t_end, "final time");
  app->add_option("--integrator.sample-every", st.cfg.integrator.sample_every,
                  "monitor sampling stride");

  app->add_option("--monitors.p", st.cfg.monitors.p_list, "tracked L^p exponents");
  app->add_flag("--monitors.weak-residual", st.cfg.monitors.track_weak_residual,
                "record the weak-form residual at every sample");

  app->add_option("--seed", st.cfg.seed, "RNG seed");
  app->add_flag("--dump-tensors", st.cfg.dump_tensors, "write tensors.hmt");
  app->add_option("-o,--out", st.out_dir, "output directory");
  app->add_option("--threads", st.threads, "max parallel sweep jobs");
}

void finalize(CliState& st) {
  st.cfg.geometry.kind =
      st.geometry_kind == "disk" ? mima::DomainKind::disk : mima::DomainKind::square;
  st.cfg.density.profile = st.density_profile == "power_law" ? mima::ProfileKind::power_law
                           : st.density_profile == "gaussian"
                               ? mima::ProfileKind::gaussian
                               : mima::ProfileKind::constant;
  st.cfg.ic.kind = st.ic_kind == "zero"          ? mima::InitialCondition::Kind::zero
                   : st.ic_kind == "single_mode" ? mima::InitialCondition::Kind::single_mode
                   : st.ic_kind == "random_band" ? mima::InitialCondition::Kind::random_band
                                                 : mima::InitialCondition::Kind::file;
  st.cfg.integrator.scheme =
      st.scheme == "if_rk4" ? mima::Scheme::if_rk4 : mima::Scheme::rk4;
}

mima::GrowthFunction parse_theta(const std::string& s) {
  if (s == "const") return mima::GrowthFunction::constant();
  if (s == "log") return mima::GrowthFunction::log_growth();
  if (s.rfind("power:", 0) == 0) return mima::GrowthFunction::power(std::stod(s.substr(6)));
  if (s.rfind("table:", 0) == 0) {
    mima::GrowthFunction g;
    g.kind = mima::GrowthFunction::Kind::table;
    for (double v : mima::read_coeff_file(s.substr(6), -1)) g.table.push_back({v, 0.0});
    // file holds alternating p theta pairs
    std::vector<std::pair<double, double>> tbl;
    for (size_t i = 0; i + 1 < g.table.size(); i += 2)
      tbl.push_back({g.table[i].first, g.table[i + 1].first});
    g.table = tbl;
    if (g.table.empty()) throw CLI::ValidationError("--theta", "empty table file");
    return g;
  }
  throw CLI::ValidationError("--theta", "expected const | log | power:B | table:FILE");
}

void write_report(const std::string& out_dir, const nlohmann::json& rep) {
  std::filesystem::create_directories(out_dir);
  mima::write_text_file(out_dir + "/report.json", rep.dump(2) + "\n");
  std::printf("wrote %s/report.json\n", out_dir.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral Galerkin runs for the regularized Hasegawa-Mima equation"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI config file (sections map to option groups)");

  CliState st;

  auto* run_cmd = app.add_subcommand("run", "single configured run");
  add_run_options(run_cmd, st);

  auto* conv_cmd = app.add_subcommand("converge-n", "self-convergence study in n");
  std::vector<int> n_list{12, 24, 48};
  conv_cmd->add_option("--n-list", n_list, "ascending mode counts");
  add_run_options(conv_cmd, st);

  auto* eps_cmd = app.add_subcommand("eps-sweep", "sweep the regularization eps");
  std::vector<double> eps_list{1e-1, 3e-2, 1e-2, 3e-3};
  eps_cmd->add_option("--eps-list", eps_list, "descending positive eps values");
  add_run_options(eps_cmd, st);

  auto* delta_cmd = app.add_subcommand("delta-sweep", "sweep the density regularization");
  std::vector<double> delta_list{1e-1, 1e-2, 1e-3, 1e-4};
  delta_cmd->add_option("--delta-list", delta_list, "delta values");
  add_run_options(delta_cmd, st);

  auto* twin_cmd = app.add_subcommand("twin", "twin-run stability probe");
  std::vector<double> scales{1e-2, 1e-3, 1e-4};
  std::string twin_theta = "const";
  twin_cmd->add_option("--scales", scales, "descending perturbation scales");
  twin_cmd->add_option("--theta", twin_theta, "growth function for the envelope");
  add_run_options(twin_cmd, st);

  auto* osgood_cmd = app.add_subcommand("osgood", "Osgood divergence classifier");
  std::string theta_s = "const";
  std::string osgood_out;
  osgood_cmd->add_option("--theta", theta_s, "const | log | power:B | table:FILE");
  osgood_cmd->add_option("-o,--out", osgood_out, "optional output directory");

  auto* cz_cmd = app.add_subcommand("cz", "Calderon-Zygmund growth study");
  std::vector<double> cz_p{2, 4, 8, 16, 32, 64};
  int cz_trials = 20;
  cz_cmd->add_option("--p-list", cz_p, "exponents in [2,64]");
  cz_cmd->add_option("--trials", cz_trials, "random fields");
  add_run_options(cz_cmd, st);

  auto* table_cmd = app.add_subcommand("basis-table", "emit the eigenbasis table as CSV");
  std::string table_out;
  table_cmd->add_option("-o,--out", table_out, "write CSV here instead of stdout");
  add_run_options(table_cmd, st);

  CLI11_PARSE(app, argc, argv);
  finalize(st);

  try {
    if (run_cmd->parsed()) {
      auto manifest = mima::run(st.cfg, st.out_dir);
      std::printf("%s: %s\n", manifest["status"].get<std::string>().c_str(),
                  (st.out_dir + "/manifest.json").c_str());
      return manifest["status"] == "ok" ? 0 : 1;
    }
    if (conv_cmd->parsed()) {
      write_report(st.out_dir, mima::converge_n(st.cfg, n_list));
      return 0;
    }
    if (eps_cmd->parsed()) {
      write_report(st.out_dir, mima::eps_sweep(st.cfg, eps_list, st.threads));
      return 0;
    }
    if (delta_cmd->parsed()) {
      write_report(st.out_dir, mima::delta_sweep(st.cfg, delta_list, st.threads));
      return 0;
    }
    if (twin_cmd->parsed()) {
      write_report(st.out_dir, mima::twin(st.cfg, scales, parse_theta(twin_theta)));
      return 0;
    }
    if (osgood_cmd->parsed()) {
      auto rep = mima::osgood_report_json(mima::osgood_test(parse_theta(theta_s)));
      std::cout << rep.dump(2) << "\n";
      if (!osgood_out.empty()) write_report(osgood_out, rep);
      return 0;
    }
    if (cz_cmd->parsed()) {
      auto basis = mima::build_basis(st.cfg.geometry, st.cfg.n_modes);
      auto grid = mima::make_grid(st.cfg.geometry, basis);
      write_report(st.out_dir, mima::cz_study(basis, grid, cz_p, cz_trials, st.cfg.seed));
      return 0;
    }
    if (table_cmd->parsed()) {
      auto basis = mima::build_basis(st.cfg.geometry, st.cfg.n_modes);
      const std::string csv = mima::basis_table_csv(basis);
      if (table_out.empty())
        std::fputs(csv.c_str(), stdout);
      else
        mima::write_text_file(table_out, csv);
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
