#pragma once

#include <limits>
#include <span>
#include <vector>

#include "mima/basis.hpp"
#include "mima/geometry.hpp"

namespace mima {

/// Interior quadrature nodes with weights that include the area element
/// (r dr dθ on the disk). Disk: Gauss-Legendre in r, uniform in θ.
/// Square: tensor Gauss-Legendre. Resolution follows the basis hint:
///   disk   N_r = 2 k_max + 16,  N_θ = 4 m_max + 16
///   square N  = 2 max-wavenumber + 16 per axis
struct QuadratureGrid {
  Geometry geom;
  std::vector<Point> nodes;
  std::vector<double> w;
  int n1 = 0, n2 = 0;  // (N_r, N_theta) or (N_x, N_y)

  int size() const { return static_cast<int>(nodes.size()); }
};

QuadratureGrid make_grid(const Geometry& geom, const BasisSet& hint);

/// Field sampled at the nodes of a grid.
struct SampledField {
  const QuadratureGrid* grid = nullptr;
  std::vector<double> v;
};

/// Deterministic fixed-order pairwise reduction.
double pairwise_sum(std::span<const double> a);

/// L²(D) inner product of two fields on the same grid.
double inner(const SampledField& f, const SampledField& g);

/// L^p norm for p in [1, inf]; p = infinity is the node max.
/// p < 1 throws std::invalid_argument.
double lp_norm(const SampledField& f, double p);
inline constexpr double kPInf = std::numeric_limits<double>::infinity();

/// All basis modes evaluated on a grid, cached column-wise (mode-major).
struct BasisSamples {
  const BasisSet* basis = nullptr;
  const QuadratureGrid* grid = nullptr;
  int n = 0, nodes = 0;
  std::vector<double> value;            // n * nodes
  std::vector<double> gx, gy;           // gradients (optional)
  std::vector<double> hxx, hxy, hyy;    // hessians (optional)

  std::span<const double> mode_values(int i) const {
    return {value.data() + static_cast<size_t>(i) * nodes, static_cast<size_t>(nodes)};
  }
};

BasisSamples sample_basis(const BasisSet& basis, const QuadratureGrid& grid,
                          bool with_gradient = true, bool with_hessian = false);

/// phi(x) = sum_i coeff_i e_i(x) at the grid nodes.
SampledField synthesize(const BasisSamples& bs, std::span<const double> coeff);

/// Quadrature of coeff-weighted mode against a sampled field: sum_q w_q f_q e_i(q).
double project_mode(const BasisSamples& bs, int i, const SampledField& f);

}  // namespace mima
