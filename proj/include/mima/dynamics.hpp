#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mima/coupling.hpp"

namespace mima {

enum class Scheme { if_rk4, rk4 };

struct IntegratorConfig {
  Scheme scheme = Scheme::if_rk4;
  double dt = 1e-3;
  double t_end = 1.0;
  int sample_every = 1;
};

/// Full right-hand side:
///   dc_i/dt = [-sum T_{ijl} c_j (gamma_l + mu_l c_l) - eps mu_i gamma_i]/(1+mu_i)
///             - eps mu_i c_i
void rhs(const CouplingTensors& tensors, std::span<const double> c, std::span<double> out);

/// Same without the stiff diagonal -eps mu_i c_i (the integrating factor
/// handles that part exactly).
void rhs_nonstiff(const CouplingTensors& tensors, std::span<const double> c,
                  std::span<double> out);

struct Trajectory {
  std::vector<SpectralField> samples;  // timestamps are exact multiples of dt*sample_every
  bool aborted = false;
  std::string error;
  std::vector<std::string> warnings;
};

/// Integrate the Galerkin ODE. if_rk4 applies the exact exponential factor
/// e^{-eps mu_i dt} to the diagonal and classical RK4 stages to the rest;
/// rk4 is plain RK4 on the full right-hand side. A per-sample callback (may be
/// empty) sees each stored state. NaN/Inf aborts with the last valid sample.
Trajectory integrate(const SpectralField& phi0, const CouplingTensors& tensors,
                     const IntegratorConfig& config,
                     const std::function<void(const SpectralField&)>& on_sample = {});

}  // namespace mima
