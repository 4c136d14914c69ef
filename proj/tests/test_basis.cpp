#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "mima/basis.hpp"
#include "mima/quadrature.hpp"

using namespace mima;

namespace {

std::vector<Point> random_interior(const Geometry& g, int count, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Point> pts;
  while (static_cast<int>(pts.size()) < count) {
    Point p;
    if (g.kind == DomainKind::disk) {
      p = {u(gen) * g.radius, u(gen) * g.radius};
      if (p.x * p.x + p.y * p.y >= 0.98 * g.radius * g.radius) continue;
    } else {
      p = {0.5 * (u(gen) + 1.0) * g.side, 0.5 * (u(gen) + 1.0) * g.side};
      if (!g.strictly_inside(p)) continue;
    }
    pts.push_back(p);
  }
  return pts;
}

}  // namespace

TEST_CASE("canonical ordering and eigenvalues") {
  for (auto geom : {Geometry::disk(), Geometry::square()}) {
    auto basis = build_basis(geom, 48);
    REQUIRE(basis.size() == 48);
    for (int i = 0; i < basis.size(); ++i) {
      const auto& md = basis.modes[static_cast<size_t>(i)];
      CHECK(md.mu > 0.0);
      CHECK(md.lambda == 2.0 + md.mu);  // exact, by construction
      if (i > 0) CHECK(md.mu >= basis.modes[static_cast<size_t>(i - 1)].mu);
    }
    // no duplicates
    for (int i = 0; i < basis.size(); ++i)
      for (int j = i + 1; j < basis.size(); ++j) {
        const auto& a = basis.modes[static_cast<size_t>(i)];
        const auto& b = basis.modes[static_cast<size_t>(j)];
        CHECK((a.m != b.m || a.k != b.k || a.parity != b.parity));
      }
  }
}

TEST_CASE("first disk and square modes") {
  auto disk = build_basis(Geometry::disk(), 1);
  CHECK(disk.modes[0].m == 0);
  CHECK(disk.modes[0].k == 1);
  CHECK(disk.modes[0].mu == doctest::Approx(5.783185962946785).epsilon(1e-13));
  CHECK(disk.modes[0].lambda == doctest::Approx(7.783185962946785).epsilon(1e-13));

  auto sq = build_basis(Geometry::square(), 1);
  CHECK(sq.modes[0].m == 1);
  CHECK(sq.modes[0].k == 1);
  CHECK(sq.modes[0].mu ==
        doctest::Approx(2.0 * 3.14159265358979323846 * 3.14159265358979323846)
            .epsilon(1e-14));
}

TEST_CASE("degenerate mu tie-break is lexicographic with cosine first") {
  auto basis = build_basis(Geometry::disk(), 16);
  for (int i = 1; i < basis.size(); ++i) {
    const auto& a = basis.modes[static_cast<size_t>(i - 1)];
    const auto& b = basis.modes[static_cast<size_t>(i)];
    if (a.mu == b.mu && a.m == b.m && a.k == b.k) {
      CHECK(a.parity == Parity::cosine);
      CHECK(b.parity == Parity::sine);
    }
  }
}

TEST_CASE("square mode closed-form values") {
  auto basis = build_basis(Geometry::square(), 4);
  auto e = eval_mode(basis.geom, basis.modes[0], {0.5, 0.5});
  CHECK(e.value == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(e.gx == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(e.gy == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("Dirichlet boundary conditions near the edge") {
  for (auto geom : {Geometry::disk(), Geometry::square()}) {
    auto basis = build_basis(geom, 24);
    for (const auto& md : basis.modes) {
      Point p = geom.kind == DomainKind::disk
                    ? Point{(1.0 - 1e-9) * geom.radius, 0.0}
                    : Point{1e-9 * geom.side, 0.37 * geom.side};
      auto e = eval_mode(geom, md, p);
      CHECK(std::abs(e.value) <= 1e-6);
      CHECK(std::abs(e.laplacian) <= 1e-6 * md.mu);
    }
  }
}

TEST_CASE("eigenfunction identity: hessian trace equals -mu value") {
  for (auto geom : {Geometry::disk(), Geometry::square()}) {
    auto basis = build_basis(geom, 32);
    auto pts = random_interior(geom, 100, 1234);
    for (const auto& md : basis.modes) {
      double scale = 0.0;
      std::vector<ModeEval> evals = eval_mode(geom, md, pts);
      for (const auto& e : evals) scale = std::max(scale, std::abs(e.value));
      for (const auto& e : evals) {
        CHECK(std::abs(e.hxx + e.hyy + md.mu * e.value) <= 1e-9 * md.mu * scale);
        CHECK(e.laplacian == -md.mu * e.value);  // analytic identity, exact
        CHECK(e.px == -e.gy);
        CHECK(e.py == e.gx);
        CHECK(e.hxy == e.hxy);  // symmetric storage by construction
      }
    }
  }
}

TEST_CASE("disk hessian cross-checked against central differences at r=1e-3") {
  auto geom = Geometry::disk();
  auto basis = build_basis(geom, 24);
  const double r = 1e-3, h = 1e-5;
  for (const auto& md : basis.modes) {
    Point p{r * 0.6, r * 0.8};
    auto e = eval_mode(geom, md, p);
    auto v = [&](double x, double y) { return eval_mode(geom, md, {x, y}).value; };
    const double fxx = (v(p.x + h, p.y) - 2.0 * v(p.x, p.y) + v(p.x - h, p.y)) / (h * h);
    const double fyy = (v(p.x, p.y + h) - 2.0 * v(p.x, p.y) + v(p.x, p.y - h)) / (h * h);
    const double fxy = (v(p.x + h, p.y + h) - v(p.x + h, p.y - h) - v(p.x - h, p.y + h) +
                        v(p.x - h, p.y - h)) /
                       (4.0 * h * h);
    const double scale = std::max({std::abs(e.hxx), std::abs(e.hyy), std::abs(e.hxy), 1.0});
    CHECK(std::abs(e.hxx - fxx) <= 1e-5 * scale);
    CHECK(std::abs(e.hyy - fyy) <= 1e-5 * scale);
    CHECK(std::abs(e.hxy - fxy) <= 1e-5 * scale);
  }
}

TEST_CASE("disk evaluation is finite and continuous across the series switch") {
  auto geom = Geometry::disk();
  auto basis = build_basis(geom, 24);
  for (const auto& md : basis.modes) {
    auto center = eval_mode(geom, md, {0.0, 0.0});
    CHECK(std::isfinite(center.value));
    CHECK(std::isfinite(center.hxx));
    CHECK(std::isfinite(center.hxy));
    auto tiny = eval_mode(geom, md, {3e-9, -4e-9});
    CHECK(std::isfinite(tiny.hxx + tiny.hyy));
    // both sides of the 1e-6 switch agree
    auto below = eval_mode(geom, md, {0.99e-6 * 0.6, 0.99e-6 * 0.8});
    auto above = eval_mode(geom, md, {1.01e-6 * 0.6, 1.01e-6 * 0.8});
    CHECK(below.value == doctest::Approx(above.value).epsilon(1e-7));
    CHECK(below.gx == doctest::Approx(above.gx).epsilon(1e-6).scale(1.0));
    CHECK(below.hxx == doctest::Approx(above.hxx).epsilon(1e-5).scale(md.mu));
  }
}

TEST_CASE("points on or outside the boundary are rejected") {
  auto geom = Geometry::disk();
  auto basis = build_basis(geom, 1);
  CHECK_THROWS_AS(eval_mode(geom, basis.modes[0], {1.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(eval_mode(geom, basis.modes[0], {1.5, 0.0}), std::domain_error);
  auto sq = Geometry::square();
  auto bs = build_basis(sq, 1);
  CHECK_THROWS_AS(eval_mode(sq, bs.modes[0], {0.0, 0.5}), std::domain_error);
  CHECK_THROWS_AS(eval_mode(sq, bs.modes[0], {0.5, 1.0}), std::domain_error);
}

TEST_CASE("basis table CSV has one row per mode") {
  auto basis = build_basis(Geometry::disk(), 8);
  const std::string csv = basis_table_csv(basis);
  CHECK(csv.rfind("index,m_or_k,k_or_l,parity,mu,lambda,norm_const\n", 0) == 0);
  size_t rows = 0;
  for (char c : csv) rows += (c == '\n');
  CHECK(rows == 9);  // header + 8 modes
}

TEST_CASE("mode sets nest: the first modes of a larger basis are the smaller basis") {
  for (auto geom : {Geometry::disk(), Geometry::square()}) {
    auto small = build_basis(geom, 12);
    auto large = build_basis(geom, 48);
    for (int i = 0; i < small.size(); ++i) {
      CHECK(small.modes[static_cast<size_t>(i)].m == large.modes[static_cast<size_t>(i)].m);
      CHECK(small.modes[static_cast<size_t>(i)].k == large.modes[static_cast<size_t>(i)].k);
      CHECK(small.modes[static_cast<size_t>(i)].parity ==
            large.modes[static_cast<size_t>(i)].parity);
    }
  }
}
