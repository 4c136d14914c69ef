#pragma once

#include <optional>
#include <vector>

#include "mima/basis.hpp"
#include "mima/quadrature.hpp"

namespace mima {

enum class ProfileKind { power_law, gaussian, constant };

/// Background density n0 > 0 on D; eta = 0 marks the singular case where
/// g = log n0 is unbounded near the boundary.
///   power_law: n0 = (1 - (r/R)^2)^alpha + eta on the disk,
///              n0 = (16 x(s-x) y(s-y) / s^4)^alpha + eta on the square
///   gaussian:  n0 = exp(-|x - x_c|^2 / (2 sigma^2)) + eta (x_c = center)
///   constant:  n0 = c + eta
struct DensitySpec {
  ProfileKind profile = ProfileKind::power_law;
  double alpha = 1.0;
  double sigma = 1.0;
  double c = 1.0;
  double eta = 0.0;

  bool singular() const { return eta == 0.0 && profile != ProfileKind::constant; }
};

double density_value(const DensitySpec& spec, const Geometry& geom, Point p);

/// g = log n0, clipped to |g| <= 700 as an overflow guard.
/// Non-positive n0 at a node throws std::domain_error.
double log_density_value(const DensitySpec& spec, const Geometry& geom, Point p);

SampledField sample_log_density(const DensitySpec& spec, const QuadratureGrid& grid);

/// g and its spectral regularization g_delta with coefficients
/// gamma_i = (g, e_i) / (1 + delta mu_i)  (the Dirichlet elliptic smoothing
/// h + delta (-Δ h) = g, realized diagonally in the eigenbasis).
struct DensityField {
  DensitySpec spec;
  SampledField g_sampled;             // the raw g at the nodes
  std::vector<double> gamma;          // coefficients of g_delta
  double delta = 0.0;
  std::optional<double> truncation_k; // clip level 1/delta when the
                                      // truncate-then-smooth path was used
  SampledField g_delta_sampled;       // g_delta synthesized on the same grid
};

DensityField regularize_density(const SampledField& g, const BasisSamples& bs,
                                double delta);

/// Clip g to [-1/delta, 1/delta] pointwise, then the same diagonal solve.
DensityField truncate_regularize(const SampledField& g, const BasisSamples& bs,
                                 double delta);

/// Initial-data smoother: (I-Δ)phi_eps - eps Δ(phi_eps - Δ phi_eps) = (I-Δ)phi0,
/// diagonally c_i -> c_i / (1 + eps mu_i). eps = 0 is the identity.
SpectralField smooth_initial_field(const SpectralField& phi0, double eps);

/// ||g||_p over the disk for a radial profile, by adaptive/double-exponential
/// 1-D quadrature in the radial variable. Reaches the boundary-layer mass that
/// fixed interior grids cannot (needed for large p); p = inf unsupported here.
double radial_lp_norm(const DensitySpec& spec, const Geometry& geom, double p);

}  // namespace mima
