#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "mima/quad1d.hpp"
#include "mima/quadrature.hpp"

using namespace mima;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("grid weights integrate the area") {
  auto disk = Geometry::disk();
  auto bdisk = build_basis(disk, 16);
  auto gdisk = make_grid(disk, bdisk);
  CHECK(pairwise_sum(gdisk.w) == doctest::Approx(kPi).epsilon(1e-12));
  for (const auto& p : gdisk.nodes) CHECK(disk.strictly_inside(p));

  auto sq = Geometry::square();
  auto bsq = build_basis(sq, 16);
  auto gsq = make_grid(sq, bsq);
  CHECK(pairwise_sum(gsq.w) == doctest::Approx(1.0).epsilon(1e-14));
  for (const auto& p : gsq.nodes) CHECK(sq.strictly_inside(p));
}

TEST_CASE("pairwise products of basis modes match the Kronecker delta") {
  for (auto geom : {Geometry::disk(), Geometry::square()}) {
    auto basis = build_basis(geom, 64);
    auto grid = make_grid(geom, basis);
    auto bs = sample_basis(basis, grid, false, false);
    double worst = 0.0;
    for (int i = 0; i < basis.size(); ++i)
      for (int j = i; j < basis.size(); ++j) {
        SampledField fi{&grid, {bs.mode_values(i).begin(), bs.mode_values(i).end()}};
        SampledField fj{&grid, {bs.mode_values(j).begin(), bs.mode_values(j).end()}};
        worst = std::max(worst, std::abs(inner(fi, fj) - (i == j ? 1.0 : 0.0)));
      }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("inner product basics") {
  auto geom = Geometry::disk();
  auto basis = build_basis(geom, 4);
  auto grid = make_grid(geom, basis);
  SampledField one{&grid, std::vector<double>(grid.w.size(), 1.0)};
  CHECK(inner(one, one) == doctest::Approx(kPi).epsilon(1e-12));

  auto other = make_grid(geom, build_basis(geom, 8));
  SampledField wrong{&other, std::vector<double>(other.w.size(), 1.0)};
  CHECK_THROWS_AS(inner(one, wrong), std::invalid_argument);
}

TEST_CASE("lp_norm on constant and singular fields") {
  auto sq = Geometry::square();
  auto bsq = build_basis(sq, 8);
  auto gsq = make_grid(sq, bsq);
  SampledField one{&gsq, std::vector<double>(gsq.w.size(), 1.0)};
  CHECK(lp_norm(one, 3.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(lp_norm(one, kPInf) == doctest::Approx(1.0));
  CHECK_THROWS_AS(lp_norm(one, 0.5), std::invalid_argument);

  // f = log(1 - r^2) on the disk: ||f||_1 = pi, ||f||_2 = sqrt(2 pi)
  auto disk = Geometry::disk();
  auto bdisk = build_basis(disk, 48);
  auto gdisk = make_grid(disk, bdisk);
  SampledField f{&gdisk, {}};
  f.v.reserve(gdisk.nodes.size());
  for (const auto& p : gdisk.nodes) f.v.push_back(std::log(1.0 - p.x * p.x - p.y * p.y));
  CHECK(lp_norm(f, 1.0) == doctest::Approx(kPi).epsilon(1e-6));
  CHECK(lp_norm(f, 2.0) == doctest::Approx(std::sqrt(2.0 * kPi)).epsilon(1e-5));
}

TEST_CASE("lp_norm is non-decreasing in p on the unit square") {
  auto sq = Geometry::square();
  auto basis = build_basis(sq, 24);
  auto grid = make_grid(sq, basis);
  auto bs = sample_basis(basis, grid, false, false);
  std::mt19937 gen(42);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> c(24);
    for (auto& v : c) v = nd(gen);
    auto f = synthesize(bs, c);
    double prev = 0.0;
    for (double p : {1.0, 2.0, 4.0, 8.0, 16.0}) {
      const double np = lp_norm(f, p);
      CHECK(np >= prev * (1.0 - 1e-12));
      prev = np;
    }
  }
}

TEST_CASE("node max is a lower bound for the sup under refinement") {
  auto sq = Geometry::square();
  auto coarse_basis = build_basis(sq, 9);
  auto fine_basis = build_basis(sq, 64);
  auto coarse = make_grid(sq, coarse_basis);
  auto fine = make_grid(sq, fine_basis);
  auto bsc = sample_basis(coarse_basis, coarse, false, false);
  auto bsf = sample_basis(coarse_basis, fine, false, false);
  std::mt19937 gen(7);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> c(9);
    for (auto& v : c) v = nd(gen);
    const double lo = lp_norm(synthesize(bsc, c), kPInf);
    const double hi = lp_norm(synthesize(bsf, c), kPInf);
    CHECK(lo <= hi * (1.0 + 1e-3));
  }
}

TEST_CASE("pairwise_sum matches a long double reference") {
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(10001);
  long double ref = 0.0;
  for (auto& x : v) {
    x = u(gen);
    ref += x;
  }
  CHECK(pairwise_sum(v) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
}

TEST_CASE("adaptive Simpson and tanh-sinh recover Gamma(p+1)") {
  // int_0^1 |log u|^p du = Gamma(p+1)
  for (double p : {1.0, 2.0, 5.0}) {
    const double ref = std::tgamma(p + 1.0);
    const double simpson = adaptive_simpson(
        [&](double u) { return u > 0 ? std::pow(-std::log(u), p) : 0.0; }, 1e-14, 1.0,
        1e-12);
    CHECK(simpson == doctest::Approx(ref).epsilon(1e-5));
    const double ts =
        tanh_sinh_01([&](double u) { return std::pow(-std::log(u), p); });
    CHECK(ts == doctest::Approx(ref).epsilon(1e-12));
  }
  // the deep boundary layer at p = 64 is beyond any fixed grid but not
  // beyond the double-exponential rule
  const double p = 64.0;
  const double ts = tanh_sinh_01([&](double u) { return std::pow(-std::log(u), p); });
  CHECK(std::log(ts) == doctest::Approx(std::lgamma(p + 1.0)).epsilon(1e-10));
}
