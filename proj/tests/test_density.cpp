#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "mima/density.hpp"

using namespace mima;

namespace {

struct Fixture {
  Geometry geom = Geometry::disk();
  BasisSet basis;
  QuadratureGrid grid;
  BasisSamples bs;
  Fixture(int n = 48, Geometry g = Geometry::disk()) : geom(g) {
    basis = build_basis(geom, n);
    grid = make_grid(geom, basis);
    bs = sample_basis(basis, grid, false, false);
    bs.basis = &basis;
    bs.grid = &grid;
  }
};

}  // namespace

TEST_CASE("constant density gives g = 0") {
  Fixture fx(8);
  DensitySpec spec{ProfileKind::constant, 1.0, 1.0, 1.0, 0.0};
  auto g = sample_log_density(spec, fx.grid);
  for (double v : g.v) CHECK(v == 0.0);
}

TEST_CASE("power-law profile on the disk is log(1 - r^2)") {
  Fixture fx(8);
  DensitySpec spec{ProfileKind::power_law, 1.0, 1.0, 1.0, 0.0};
  auto g = sample_log_density(spec, fx.grid);
  for (size_t q = 0; q < g.v.size(); ++q) {
    const auto& p = fx.grid.nodes[q];
    CHECK(g.v[q] ==
          doctest::Approx(std::log(1.0 - p.x * p.x - p.y * p.y)).epsilon(1e-13));
  }
  CHECK(log_density_value(spec, fx.geom, {0.0, 0.0}) == 0.0);
}

TEST_CASE("alpha scales the log-density norms linearly") {
  Fixture fx(16);
  DensitySpec a1{ProfileKind::power_law, 1.0, 1.0, 1.0, 0.0};
  DensitySpec a2{ProfileKind::power_law, 2.0, 1.0, 1.0, 0.0};
  auto g1 = sample_log_density(a1, fx.grid);
  auto g2 = sample_log_density(a2, fx.grid);
  for (double p : {1.0, 2.0, 4.0})
    CHECK(lp_norm(g2, p) == doctest::Approx(2.0 * lp_norm(g1, p)).epsilon(1e-12));
}

TEST_CASE("regularization is the diagonal elliptic solve in the eigenbasis") {
  Fixture fx(12);
  // g equal to the first mode: gamma_1 = 1/(1 + delta mu_1), others 0
  SampledField g{&fx.grid,
                 {fx.bs.mode_values(0).begin(), fx.bs.mode_values(0).end()}};
  const double delta = 0.37;
  auto df = regularize_density(g, fx.bs, delta);
  CHECK(df.gamma[0] ==
        doctest::Approx(1.0 / (1.0 + delta * fx.basis.modes[0].mu)).epsilon(1e-11));
  for (int i = 1; i < 12; ++i) CHECK(std::abs(df.gamma[static_cast<size_t>(i)]) < 1e-11);
  CHECK_THROWS_AS(regularize_density(g, fx.bs, 0.0), std::invalid_argument);
}

TEST_CASE("L^p contraction of the elliptic smoothing") {
  Fixture fx;
  DensitySpec sing{ProfileKind::power_law, 1.0, 1.0, 1.0, 0.0};
  auto g = sample_log_density(sing, fx.grid);
  for (double delta : {1e-1, 1e-2, 1e-3, 1e-4}) {
    auto df = regularize_density(g, fx.bs, delta);
    for (double p : {2.0, 4.0, 8.0})
      CHECK(lp_norm(df.g_delta_sampled, p) <= lp_norm(g, p) * (1.0 + 1e-8));
  }
}

TEST_CASE("maximum principle for bounded densities") {
  Fixture fx;
  DensitySpec bounded{ProfileKind::power_law, 1.0, 1.0, 1.0, 0.1};
  auto g = sample_log_density(bounded, fx.grid);
  for (double delta : {1e-1, 1e-2, 1e-3, 1e-4}) {
    auto df = regularize_density(g, fx.bs, delta);
    CHECK(lp_norm(df.g_delta_sampled, kPInf) <= lp_norm(g, kPInf) * (1.0 + 1e-8));
  }
}

TEST_CASE("truncation path: inactive for small fields, clipped for singular ones") {
  Fixture fx(16);
  DensitySpec bounded{ProfileKind::gaussian, 1.0, 0.8, 1.0, 0.0};
  auto g = sample_log_density(bounded, fx.grid);
  const double delta = 0.05;  // 1/delta = 20 far above |g|
  auto plain = regularize_density(g, fx.bs, delta);
  auto trunc = truncate_regularize(g, fx.bs, delta);
  REQUIRE(trunc.truncation_k.has_value());
  for (size_t i = 0; i < plain.gamma.size(); ++i)
    CHECK(trunc.gamma[i] == doctest::Approx(plain.gamma[i]).epsilon(1e-14));

  DensitySpec sing{ProfileKind::power_law, 1.0, 1.0, 1.0, 0.0};
  auto gs = sample_log_density(sing, fx.grid);
  auto ts = truncate_regularize(gs, fx.bs, 0.1);
  CHECK(*ts.truncation_k == 10.0);
  // p in (1,2) contraction
  CHECK(lp_norm(ts.g_delta_sampled, 1.5) <= lp_norm(gs, 1.5) * (1.0 + 1e-8));
}

TEST_CASE("Lemma-type convergence: ||g_delta - g||_p decreases along delta") {
  Fixture fx(256, Geometry::square());
  DensitySpec sing{ProfileKind::power_law, 1.0, 1.0, 1.0, 0.0};
  auto g = sample_log_density(sing, fx.grid);
  for (double p : {2.0, 4.0}) {
    double prev = 1e300;
    for (double delta : {1e-1, 1e-2, 1e-3, 1e-4}) {
      auto df = regularize_density(g, fx.bs, delta);
      SampledField diff = df.g_delta_sampled;
      for (size_t q = 0; q < diff.v.size(); ++q) diff.v[q] -= g.v[q];
      const double e = lp_norm(diff, p);
      CHECK(e <= prev * 1.01);
      prev = e;
    }
  }
}

TEST_CASE("initial-data smoother is diagonal and contractive") {
  Fixture fx(12);
  SpectralField phi0{&fx.basis, std::vector<double>(12, 0.0), 0.0};
  phi0.c[0] = 1.0;
  auto same = smooth_initial_field(phi0, 0.0);
  CHECK(same.c == phi0.c);
  auto sm = smooth_initial_field(phi0, 1.0);
  CHECK(sm.c[0] == doctest::Approx(1.0 / (1.0 + fx.basis.modes[0].mu)).epsilon(1e-15));

  // ||(I - lap) phi_eps||_2 <= ||(I - lap) phi_0||_2, coefficient-wise oracle
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 10; ++trial) {
    SpectralField f{&fx.basis, std::vector<double>(12), 0.0};
    for (auto& v : f.c)
      v = static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5;
    auto fs = smooth_initial_field(f, 0.3);
    double before = 0.0, after = 0.0;
    for (int i = 0; i < 12; ++i) {
      const double om = 1.0 + fx.basis.modes[static_cast<size_t>(i)].mu;
      before += om * om * f.c[static_cast<size_t>(i)] * f.c[static_cast<size_t>(i)];
      after += om * om * fs.c[static_cast<size_t>(i)] * fs.c[static_cast<size_t>(i)];
    }
    CHECK(after <= before * (1.0 + 1e-12));
  }
}

TEST_CASE("singularity class: ||g||_p / (p alpha) stays in a factor-2 band") {
  auto geom = Geometry::disk();
  for (double alpha : {1.0, 2.0}) {
    DensitySpec spec{ProfileKind::power_law, alpha, 1.0, 1.0, 0.0};
    double lo = 1e300, hi = 0.0;
    for (double p : {4.0, 8.0, 16.0, 32.0}) {
      const double ratio = radial_lp_norm(spec, geom, p) / (p * alpha);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    CHECK(hi / lo <= 2.0);
  }
}

TEST_CASE("radial norms match the Gamma-function closed form") {
  auto geom = Geometry::disk();
  DensitySpec spec{ProfileKind::power_law, 1.0, 1.0, 1.0, 0.0};
  // ||log(1-r^2)||_p^p = pi Gamma(p+1)
  for (double p : {1.0, 2.0, 8.0, 64.0}) {
    const double ref = (std::log(3.14159265358979323846) + std::lgamma(p + 1.0)) / p;
    CHECK(std::log(radial_lp_norm(spec, geom, p)) == doctest::Approx(ref).epsilon(1e-9));
  }
}

TEST_CASE("non-positive density is rejected") {
  Fixture fx(4);
  DensitySpec bad{ProfileKind::constant, 1.0, 1.0, -2.0, 0.0};
  CHECK_THROWS_AS(sample_log_density(bad, fx.grid), std::domain_error);
}
