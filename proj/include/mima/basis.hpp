#pragma once

#include <string>
#include <vector>

#include "mima/geometry.hpp"

namespace mima {

enum class Parity { cosine, sine };

/// One eigenfunction of the Dirichlet Laplacian, -Δe = μe, e|∂D = 0,
/// L²-normalized. It also solves the mixed eigenproblem
///   (I-Δ)e + (I-Δ)(e-Δe) = λ(I-Δ)e,  e = Δe = 0 on ∂D,
/// with λ = 2 + μ, which makes every linear operator in the scheme diagonal.
struct BasisMode {
  // disk: angular index m >= 0, radial index k >= 1, parity (m >= 1 only)
  // square: wavenumbers (m, k) = (k_x, k_y), both >= 1, parity ignored
  int m = 0;
  int k = 1;
  Parity parity = Parity::cosine;
  double mu = 0.0;
  double lambda = 0.0;  // 2 + mu
  double norm_const = 0.0;
  double root = 0.0;  // disk: j_{m,k}
};

/// Pointwise evaluation record. laplacian is the analytic -mu*value; the
/// hessian comes from actual second-derivative formulas (series near the disk
/// center), so hxx+hyy is an independent check of -mu*value.
struct ModeEval {
  double value = 0.0;
  double gx = 0.0, gy = 0.0;        // gradient
  double px = 0.0, py = 0.0;        // perp gradient (-gy, gx)
  double laplacian = 0.0;
  double hxx = 0.0, hxy = 0.0, hyy = 0.0;
};

/// The first n modes in canonical order: mu ascending, ties broken
/// lexicographically by (m, k, parity) with cosine before sine.
struct BasisSet {
  Geometry geom;
  std::vector<BasisMode> modes;

  int size() const { return static_cast<int>(modes.size()); }
  int max_radial_index() const;   // disk k_max; square max wavenumber
  int max_angular_index() const;  // disk m_max; square max wavenumber
};

BasisSet build_basis(const Geometry& geom, int n);

ModeEval eval_mode(const Geometry& geom, const BasisMode& mode, Point p);

std::vector<ModeEval> eval_mode(const Geometry& geom, const BasisMode& mode,
                                const std::vector<Point>& pts);

/// CSV table: index,m_or_k,k_or_l,parity,mu,lambda,norm_const
std::string basis_table_csv(const BasisSet& basis);

/// Coefficient vector over a BasisSet: phi(t,x) = sum_i c_i e_i(x).
struct SpectralField {
  const BasisSet* basis = nullptr;
  std::vector<double> c;
  double t = 0.0;
};

}  // namespace mima
