#include "mima/quadrature.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mima {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Golub-Welsch is overkill here: Newton on Legendre P_n with the standard
// asymptotic seed gives nodes/weights on [-1,1] to machine precision.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<size_t>(n), 0.0);
  w.assign(static_cast<size_t>(n), 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[static_cast<size_t>(i)] = -z;
    x[static_cast<size_t>(n - 1 - i)] = z;
    double wi = 2.0 / ((1.0 - z * z) * pp * pp);
    w[static_cast<size_t>(i)] = wi;
    w[static_cast<size_t>(n - 1 - i)] = wi;
  }
}

}  // namespace

QuadratureGrid make_grid(const Geometry& geom, const BasisSet& hint) {
  if (hint.size() == 0) throw std::invalid_argument("make_grid: empty basis hint");
  QuadratureGrid g;
  g.geom = geom;
  std::vector<double> gx, gw;
  if (geom.kind == DomainKind::disk) {
    const int nr = 2 * hint.max_radial_index() + 16;
    const int nt = 4 * hint.max_angular_index() + 16;
    g.n1 = nr;
    g.n2 = nt;
    gauss_legendre(nr, gx, gw);
    const double R = geom.radius;
    g.nodes.reserve(static_cast<size_t>(nr) * nt);
    g.w.reserve(static_cast<size_t>(nr) * nt);
    for (int i = 0; i < nr; ++i) {
      const double r = 0.5 * R * (gx[static_cast<size_t>(i)] + 1.0);
      const double wr = 0.5 * R * gw[static_cast<size_t>(i)] * r * (2.0 * kPi / nt);
      for (int j = 0; j < nt; ++j) {
        const double th = 2.0 * kPi * j / nt;
        g.nodes.push_back({r * std::cos(th), r * std::sin(th)});
        g.w.push_back(wr);
      }
    }
  } else {
    const int n = 2 * std::max(hint.max_radial_index(), hint.max_angular_index()) + 16;
    g.n1 = n;
    g.n2 = n;
    gauss_legendre(n, gx, gw);
    const double s = geom.side;
    g.nodes.reserve(static_cast<size_t>(n) * n);
    g.w.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
      const double x = 0.5 * s * (gx[static_cast<size_t>(i)] + 1.0);
      for (int j = 0; j < n; ++j) {
        const double y = 0.5 * s * (gx[static_cast<size_t>(j)] + 1.0);
        g.nodes.push_back({x, y});
        g.w.push_back(0.25 * s * s * gw[static_cast<size_t>(i)] * gw[static_cast<size_t>(j)]);
      }
    }
  }
  return g;
}

double pairwise_sum(std::span<const double> a) {
  if (a.size() <= 8) {
    double s = 0.0;
    for (double v : a) s += v;
    return s;
  }
  const size_t h = a.size() / 2;
  return pairwise_sum(a.subspan(0, h)) + pairwise_sum(a.subspan(h));
}

double inner(const SampledField& f, const SampledField& g) {
  if (f.grid == nullptr || f.grid != g.grid)
    throw std::invalid_argument("inner: fields live on different grids");
  const auto& w = f.grid->w;
  std::vector<double> t(w.size());
  for (size_t q = 0; q < w.size(); ++q) t[q] = w[q] * f.v[q] * g.v[q];
  return pairwise_sum(t);
}

double lp_norm(const SampledField& f, double p) {
  if (f.grid == nullptr) throw std::invalid_argument("lp_norm: field has no grid");
  if (p == kPInf) {
    double m = 0.0;
    for (double v : f.v) m = std::max(m, std::abs(v));
    return m;
  }
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1 or infinity");
  const auto& w = f.grid->w;
  std::vector<double> t(w.size());
  for (size_t q = 0; q < w.size(); ++q) t[q] = w[q] * std::pow(std::abs(f.v[q]), p);
  return std::pow(pairwise_sum(t), 1.0 / p);
}

BasisSamples sample_basis(const BasisSet& basis, const QuadratureGrid& grid,
                          bool with_gradient, bool with_hessian) {
  BasisSamples bs;
  bs.basis = &basis;
  bs.grid = &grid;
  bs.n = basis.size();
  bs.nodes = grid.size();
  const size_t total = static_cast<size_t>(bs.n) * bs.nodes;
  bs.value.resize(total);
  if (with_gradient) {
    bs.gx.resize(total);
    bs.gy.resize(total);
  }
  if (with_hessian) {
    bs.hxx.resize(total);
    bs.hxy.resize(total);
    bs.hyy.resize(total);
  }
  for (int i = 0; i < bs.n; ++i) {
    const auto& md = basis.modes[static_cast<size_t>(i)];
    const size_t off = static_cast<size_t>(i) * bs.nodes;
    for (int q = 0; q < bs.nodes; ++q) {
      ModeEval e = eval_mode(basis.geom, md, grid.nodes[static_cast<size_t>(q)]);
      bs.value[off + q] = e.value;
      if (with_gradient) {
        bs.gx[off + q] = e.gx;
        bs.gy[off + q] = e.gy;
      }
      if (with_hessian) {
        bs.hxx[off + q] = e.hxx;
        bs.hxy[off + q] = e.hxy;
        bs.hyy[off + q] = e.hyy;
      }
    }
  }
  return bs;
}

SampledField synthesize(const BasisSamples& bs, std::span<const double> coeff) {
  if (static_cast<int>(coeff.size()) != bs.n)
    throw std::invalid_argument("synthesize: coefficient count mismatch");
  SampledField f;
  f.grid = bs.grid;
  f.v.assign(static_cast<size_t>(bs.nodes), 0.0);
  for (int i = 0; i < bs.n; ++i) {
    const double c = coeff[static_cast<size_t>(i)];
    if (c == 0.0) continue;
    const double* col = bs.value.data() + static_cast<size_t>(i) * bs.nodes;
    for (int q = 0; q < bs.nodes; ++q) f.v[static_cast<size_t>(q)] += c * col[q];
  }
  return f;
}

double project_mode(const BasisSamples& bs, int i, const SampledField& f) {
  if (f.grid != bs.grid) throw std::invalid_argument("project_mode: grid mismatch");
  const double* col = bs.value.data() + static_cast<size_t>(i) * bs.nodes;
  const auto& w = bs.grid->w;
  std::vector<double> t(w.size());
  for (size_t q = 0; q < w.size(); ++q) t[q] = w[q] * f.v[q] * col[q];
  return pairwise_sum(t);
}

}  // namespace mima
