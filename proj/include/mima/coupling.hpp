#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mima/density.hpp"
#include "mima/quadrature.hpp"

namespace mima {

struct TriadEntry {
  int32_t i, j, l;
  double t;  // T_{ijl} = int e_i (perp-grad e_j . grad e_l) dx
};

/// Galerkin tensors of the quadratic ODE system. With g_delta restricted to
/// the basis span (coefficients gamma), advection B, nonlinearity D and
/// forcing F all collapse onto the single triad tensor T plus diagonals:
///   (1+mu_i) dc_i/dt = -sum_{j,l} T_{ijl} c_j (gamma_l + mu_l c_l)
///                      - eps mu_i (1+mu_i) c_i - eps mu_i gamma_i
struct CouplingTensors {
  const BasisSet* basis = nullptr;
  std::vector<TriadEntry> triads;   // lexicographic (i,j,l); |T| < 1e-14 pruned
  std::vector<double> mass_diag;    // 1 + mu_i
  std::vector<double> stiff_diag;   // mu_i
  std::vector<double> gamma;        // density coefficients (empty until rhs data set)
  double eps = 0.0;
  int64_t candidate_triples = 0;    // n^3
  int64_t quadratured_triples = 0;  // triples that survived the selection rule

  int size() const { return basis ? basis->size() : 0; }
};

/// Assemble the triad tensor. Only triples passing the angular selection rule
/// are quadratured (disk: m_i in {m_j+m_l, |m_j-m_l|} plus parity pairing;
/// square: per-axis wavenumber matching). A deterministic ~1% sample of the
/// filtered-out triples is spot-checked against quadrature at 1e-13.
CouplingTensors assemble_triads(const BasisSet& basis, const BasisSamples& bs,
                                double spot_check_fraction = 0.01);

void assemble_rhs_data(CouplingTensors& tensors, const DensityField& density, double eps);

/// Selection rule used by the assembly (exposed for tests).
bool triad_selection(const BasisSet& basis, int i, int j, int l);

/// Direct quadrature of a single T_{ijl} (the assembly bypassing the filter).
double triad_quadrature(const BasisSamples& bs, int i, int j, int l);

/// Closed-form T_{ijl} on the unit-side square via product-to-sum integrals.
double triad_square_closed_form(const BasisSet& basis, int i, int j, int l);

/// Binary dump, little-endian: "HMT1", u32 n, u64 count, then
/// (u32 i, u32 j, u32 l, f64 value) records in lexicographic order.
void dump_triads(const CouplingTensors& tensors, const std::string& path);
CouplingTensors load_triads(const BasisSet& basis, const std::string& path);

}  // namespace mima
