#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "mima/monitors.hpp"
#include "mima/yudovich.hpp"

namespace mima {

inline constexpr const char* kVersion = "0.1.0";

/// Deterministic seeded gaussian (Box-Muller over mt19937_64), so outputs are
/// reproducible across standard libraries.
class GaussianRng {
 public:
  explicit GaussianRng(uint64_t seed) : gen_(seed) {}
  double uniform() { return (gen_() >> 11) * 0x1.0p-53; }  // [0, 1)
  double normal();

 private:
  std::mt19937_64 gen_;
  bool have_ = false;
  double cached_ = 0.0;
};

struct InitialCondition {
  enum class Kind { zero, single_mode, random_band, file };
  Kind kind = Kind::single_mode;
  int mode_index = 0;
  double amplitude = 1.0;
  double mu_min = 0.0;
  double mu_max = 1e18;
  double w_norm = 1.0;
  std::string path;
  double smoother_eps = 0.0;  // initial-data smoother c_i -> c_i/(1+eps mu_i)
};

struct RunConfig {
  Geometry geometry = Geometry::disk();
  int n_modes = 24;
  DensitySpec density;
  double delta = 1e-2;
  bool truncate = false;  // use the truncate-then-smooth regularizer
  InitialCondition ic;
  double eps = 0.0;  // fourth-order regularization strength
  IntegratorConfig integrator;
  MonitorSpec monitors;
  uint64_t seed = 1;
  bool dump_tensors = false;

  void validate() const;  // throws std::invalid_argument on violations
};

/// Everything a run produces, heap-anchored so interior pointers stay valid.
struct RunArtifacts {
  std::unique_ptr<BasisSet> basis;
  std::unique_ptr<QuadratureGrid> grid;
  std::unique_ptr<BasisSamples> samples;
  std::unique_ptr<DensityField> density;
  std::unique_ptr<CouplingTensors> tensors;
  Trajectory trajectory;
  MonitorSeries monitors;
  double energy_residual_rel = 0.0;
};

SpectralField make_initial_condition(const RunConfig& cfg, const BasisSet& basis);

RunArtifacts run_in_memory(const RunConfig& cfg);

/// Full pipeline writing monitors.csv, snapshots, optional tensors.hmt and
/// manifest.json into out_dir; returns the manifest.
nlohmann::json run(const RunConfig& cfg, const std::string& out_dir);

nlohmann::json converge_n(const RunConfig& cfg, const std::vector<int>& n_list);
nlohmann::json eps_sweep(const RunConfig& cfg, const std::vector<double>& eps_list,
                         int threads = 1);
nlohmann::json delta_sweep(const RunConfig& cfg, const std::vector<double>& delta_list,
                           int threads = 1);
nlohmann::json twin(const RunConfig& cfg, const std::vector<double>& scales,
                    const GrowthFunction& theta = GrowthFunction::constant());
nlohmann::json cz_study(const BasisSet& basis, const QuadratureGrid& grid,
                        const std::vector<double>& p_list, int trials, uint64_t seed);

nlohmann::json config_to_json(const RunConfig& cfg);
nlohmann::json osgood_report_json(const OsgoodReport& rep);

}  // namespace mima
