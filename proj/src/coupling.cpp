#include "mima/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace mima {

namespace {

constexpr double kPruneThreshold = 1e-14;
constexpr double kSpotCheckTol = 1e-13;

bool angular_match(int mi, int mj, int ml) { return mi == mj + ml || mi == std::abs(mj - ml); }

// sine count parity across (i, j, l); one angular derivative flips one parity,
// so the triple integral can be nonzero only when the raw count is odd.
bool parity_admissible(const BasisMode& a, const BasisMode& b, const BasisMode& c) {
  int s = (a.parity == Parity::sine) + (b.parity == Parity::sine) + (c.parity == Parity::sine);
  return (s & 1) == 1;
}

}  // namespace

bool triad_selection(const BasisSet& basis, int i, int j, int l) {
  const auto& a = basis.modes[static_cast<size_t>(i)];
  const auto& b = basis.modes[static_cast<size_t>(j)];
  const auto& c = basis.modes[static_cast<size_t>(l)];
  if (basis.geom.kind == DomainKind::disk)
    return angular_match(a.m, b.m, c.m) && parity_admissible(a, b, c);
  return angular_match(a.m, b.m, c.m) && angular_match(a.k, b.k, c.k);
}

double triad_quadrature(const BasisSamples& bs, int i, int j, int l) {
  const size_t nodes = static_cast<size_t>(bs.nodes);
  const double* vi = bs.value.data() + static_cast<size_t>(i) * nodes;
  const double* gxj = bs.gx.data() + static_cast<size_t>(j) * nodes;
  const double* gyj = bs.gy.data() + static_cast<size_t>(j) * nodes;
  const double* gxl = bs.gx.data() + static_cast<size_t>(l) * nodes;
  const double* gyl = bs.gy.data() + static_cast<size_t>(l) * nodes;
  const auto& w = bs.grid->w;
  std::vector<double> t(nodes);
  for (size_t q = 0; q < nodes; ++q)
    t[q] = w[q] * vi[q] * (gxj[q] * gyl[q] - gyj[q] * gxl[q]);
  return pairwise_sum(t);
}

CouplingTensors assemble_triads(const BasisSet& basis, const BasisSamples& bs,
                                double spot_check_fraction) {
  if (bs.basis != &basis) throw std::invalid_argument("assemble_triads: basis/grid mismatch");
  if (bs.gx.empty()) throw std::invalid_argument("assemble_triads: samples lack gradients");

  const int n = basis.size();
  CouplingTensors T;
  T.basis = &basis;
  T.mass_diag.resize(static_cast<size_t>(n));
  T.stiff_diag.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    T.mass_diag[static_cast<size_t>(i)] = 1.0 + basis.modes[static_cast<size_t>(i)].mu;
    T.stiff_diag[static_cast<size_t>(i)] = basis.modes[static_cast<size_t>(i)].mu;
  }
  T.candidate_triples = static_cast<int64_t>(n) * n * n;

  const uint64_t sample_mod =
      spot_check_fraction > 0.0 ? static_cast<uint64_t>(1.0 / spot_check_fraction) : 0;

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = j + 1; l < n; ++l) {
        if (triad_selection(basis, i, j, l)) {
          T.quadratured_triples += 2;  // both (i,j,l) and (i,l,j)
          const double v = triad_quadrature(bs, i, j, l);
          if (std::abs(v) >= kPruneThreshold) {
            T.triads.push_back({i, j, l, v});
            T.triads.push_back({i, l, j, -v});
          }
        } else if (sample_mod) {
          // deterministic 1-in-sample_mod spot check of the filter
          uint64_t h = 1469598103934665603ull;
          for (uint64_t x : {static_cast<uint64_t>(i), static_cast<uint64_t>(j),
                             static_cast<uint64_t>(l)}) {
            h ^= x + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
          }
          if (h % sample_mod == 0) {
            const double v = triad_quadrature(bs, i, j, l);
            if (std::abs(v) > kSpotCheckTol)
              throw std::logic_error("assemble_triads: selection rule dropped a nonzero triad");
          }
        }
      }
    }
  }
  std::sort(T.triads.begin(), T.triads.end(), [](const TriadEntry& a, const TriadEntry& b) {
    return std::tie(a.i, a.j, a.l) < std::tie(b.i, b.j, b.l);
  });
  return T;
}

void assemble_rhs_data(CouplingTensors& tensors, const DensityField& density, double eps) {
  if (eps < 0.0) throw std::invalid_argument("assemble_rhs_data: eps must be >= 0");
  if (static_cast<int>(density.gamma.size()) != tensors.size())
    throw std::invalid_argument("assemble_rhs_data: density built on a different basis");
  tensors.gamma = density.gamma;
  tensors.eps = eps;
}

double triad_square_closed_form(const BasisSet& basis, int i, int j, int l) {
  if (basis.geom.kind != DomainKind::square)
    throw std::invalid_argument("triad_square_closed_form: square basis only");
  const auto& a = basis.modes[static_cast<size_t>(i)];
  const auto& b = basis.modes[static_cast<size_t>(j)];
  const auto& c = basis.modes[static_cast<size_t>(l)];
  // int_0^pi sin(au)sin(bu)cos(cu) du = (pi/4)[delta_{|a-b|,c} - delta_{a+b,c}]
  // (c >= 1); the two nonlinear terms carry one x- and one y-derivative each.
  auto ssc = [](int sa, int sb, int co) {
    double v = 0.0;
    if (std::abs(sa - sb) == co) v += 1.0;
    if (sa + sb == co) v -= 1.0;
    return 0.25 * v;  // in units of pi
  };
  const double X1 = ssc(a.m, c.m, b.m);  // cos on j_x
  const double Y1 = ssc(a.k, b.k, c.k);  // cos on l_y
  const double X2 = ssc(a.m, b.m, c.m);  // cos on l_x
  const double Y2 = ssc(a.k, c.k, b.k);  // cos on j_y
  const double pi = 3.14159265358979323846;
  const double s = basis.geom.side;
  return (8.0 / (s * s * s)) * pi * pi *
         (static_cast<double>(b.m) * c.k * X1 * Y1 -
          static_cast<double>(b.k) * c.m * X2 * Y2);
}

void dump_triads(const CouplingTensors& tensors, const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("dump_triads: cannot open " + path);
  const char magic[4] = {'H', 'M', 'T', '1'};
  const uint32_t n = static_cast<uint32_t>(tensors.size());
  const uint64_t count = tensors.triads.size();
  std::fwrite(magic, 1, 4, f);
  std::fwrite(&n, sizeof n, 1, f);
  std::fwrite(&count, sizeof count, 1, f);
  for (const auto& e : tensors.triads) {
    const uint32_t idx[3] = {static_cast<uint32_t>(e.i), static_cast<uint32_t>(e.j),
                             static_cast<uint32_t>(e.l)};
    std::fwrite(idx, sizeof(uint32_t), 3, f);
    std::fwrite(&e.t, sizeof(double), 1, f);
  }
  std::fclose(f);
}

CouplingTensors load_triads(const BasisSet& basis, const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw std::runtime_error("load_triads: cannot open " + path);
  char magic[4];
  uint32_t n = 0;
  uint64_t count = 0;
  if (std::fread(magic, 1, 4, f) != 4 || std::string(magic, 4) != "HMT1" ||
      std::fread(&n, sizeof n, 1, f) != 1 || std::fread(&count, sizeof count, 1, f) != 1 ||
      static_cast<int>(n) != basis.size()) {
    std::fclose(f);
    throw std::runtime_error("load_triads: bad header in " + path);
  }
  CouplingTensors T;
  T.basis = &basis;
  T.mass_diag.resize(n);
  T.stiff_diag.resize(n);
  for (uint32_t i = 0; i < n; ++i) {
    T.mass_diag[i] = 1.0 + basis.modes[i].mu;
    T.stiff_diag[i] = basis.modes[i].mu;
  }
  T.triads.resize(count);
  for (auto& e : T.triads) {
    uint32_t idx[3];
    if (std::fread(idx, sizeof(uint32_t), 3, f) != 3 ||
        std::fread(&e.t, sizeof(double), 1, f) != 1) {
      std::fclose(f);
      throw std::runtime_error("load_triads: truncated file " + path);
    }
    e.i = static_cast<int32_t>(idx[0]);
    e.j = static_cast<int32_t>(idx[1]);
    e.l = static_cast<int32_t>(idx[2]);
  }
  std::fclose(f);
  return T;
}

}  // namespace mima
