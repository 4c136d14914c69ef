#include "mima/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mima/quad1d.hpp"

namespace mima {

namespace {

constexpr double kLogClip = 700.0;

double clip_log(double n0) {
  if (!(n0 > 0.0)) throw std::domain_error("log density: n0 <= 0 at a node");
  double g = std::log(n0);
  return std::clamp(g, -kLogClip, kLogClip);
}

std::vector<double> spectral_coeffs(const SampledField& g, const BasisSamples& bs,
                                    double delta) {
  std::vector<double> gamma(static_cast<size_t>(bs.n));
  for (int i = 0; i < bs.n; ++i) {
    const double mu = bs.basis->modes[static_cast<size_t>(i)].mu;
    gamma[static_cast<size_t>(i)] = project_mode(bs, i, g) / (1.0 + delta * mu);
  }
  return gamma;
}

}  // namespace

double density_value(const DensitySpec& spec, const Geometry& geom, Point p) {
  switch (spec.profile) {
    case ProfileKind::power_law: {
      double base;
      if (geom.kind == DomainKind::disk) {
        const double rr = (p.x * p.x + p.y * p.y) / (geom.radius * geom.radius);
        base = 1.0 - rr;
      } else {
        const double s = geom.side;
        base = 16.0 * p.x * (s - p.x) * p.y * (s - p.y) / (s * s * s * s);
      }
      base = std::max(base, 0.0);
      return std::pow(base, spec.alpha) + spec.eta;
    }
    case ProfileKind::gaussian: {
      double dx, dy;
      if (geom.kind == DomainKind::disk) {
        dx = p.x;
        dy = p.y;
      } else {
        dx = p.x - 0.5 * geom.side;
        dy = p.y - 0.5 * geom.side;
      }
      return std::exp(-(dx * dx + dy * dy) / (2.0 * spec.sigma * spec.sigma)) + spec.eta;
    }
    case ProfileKind::constant:
      return spec.c + spec.eta;
  }
  return 0.0;
}

double log_density_value(const DensitySpec& spec, const Geometry& geom, Point p) {
  return clip_log(density_value(spec, geom, p));
}

SampledField sample_log_density(const DensitySpec& spec, const QuadratureGrid& grid) {
  SampledField f;
  f.grid = &grid;
  f.v.resize(grid.nodes.size());
  for (size_t q = 0; q < grid.nodes.size(); ++q)
    f.v[q] = clip_log(density_value(spec, grid.geom, grid.nodes[q]));
  return f;
}

DensityField regularize_density(const SampledField& g, const BasisSamples& bs,
                                double delta) {
  if (delta <= 0.0) throw std::invalid_argument("regularize_density: delta must be > 0");
  DensityField d;
  d.g_sampled = g;
  d.delta = delta;
  d.gamma = spectral_coeffs(g, bs, delta);
  d.g_delta_sampled = synthesize(bs, d.gamma);
  return d;
}

DensityField truncate_regularize(const SampledField& g, const BasisSamples& bs,
                                 double delta) {
  if (delta <= 0.0) throw std::invalid_argument("truncate_regularize: delta must be > 0");
  const double k = 1.0 / delta;
  SampledField clipped = g;
  for (auto& v : clipped.v) v = std::clamp(v, -k, k);
  DensityField d;
  d.g_sampled = g;
  d.delta = delta;
  d.truncation_k = k;
  d.gamma = spectral_coeffs(clipped, bs, delta);
  d.g_delta_sampled = synthesize(bs, d.gamma);
  return d;
}

SpectralField smooth_initial_field(const SpectralField& phi0, double eps) {
  if (eps < 0.0) throw std::invalid_argument("smooth_initial_field: eps must be >= 0");
  SpectralField out = phi0;
  for (size_t i = 0; i < out.c.size(); ++i) {
    const double mu = phi0.basis->modes[i].mu;
    out.c[i] = phi0.c[i] / (1.0 + eps * mu);
  }
  return out;
}

double radial_lp_norm(const DensitySpec& spec, const Geometry& geom, double p) {
  if (geom.kind != DomainKind::disk)
    throw std::invalid_argument("radial_lp_norm: disk profiles only");
  if (p < 1.0) throw std::invalid_argument("radial_lp_norm: p must be >= 1");
  const double pi = 3.14159265358979323846;
  const double R = geom.radius;
  // With y = 1 - (r/R)^2 the norm is |D| int_0^1 |g(y)|^p dy and the boundary
  // layer sits at y -> 0, where the tanh-sinh rule keeps full precision. The
  // profile is evaluated directly in y so the layer is not rounded away.
  auto g_of_y = [&](double y) {
    double n0;
    switch (spec.profile) {
      case ProfileKind::power_law:
        if (spec.eta == 0.0)
          return std::clamp(spec.alpha * std::log(y), -kLogClip, kLogClip);
        n0 = std::pow(y, spec.alpha) + spec.eta;
        break;
      case ProfileKind::gaussian:
        n0 = std::exp(-R * R * (1.0 - y) / (2.0 * spec.sigma * spec.sigma)) + spec.eta;
        break;
      default:
        n0 = spec.c + spec.eta;
        break;
    }
    return clip_log(n0);
  };
  auto f = [&](double y) { return std::pow(std::abs(g_of_y(y)), p); };
  const double integral = tanh_sinh_01(f, 6.5, 1.0 / 128.0);
  return std::pow(pi * R * R * integral, 1.0 / p);
}

}  // namespace mima
