#include "mima/basis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>
#include <tuple>

#include "mima/bessel.hpp"

namespace mima {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Switch radius for the polar-series evaluation path; the polar chain rule is
// singular at r = 0.
constexpr double kPolarSwitch = 1e-6;

double disk_norm_const(int m, double root, double radius) {
  const double jn = std::abs(bessel_j(m + 1, root));
  const double base = 1.0 / (std::sqrt(kPi) * radius * jn);
  return m >= 1 ? base * std::sqrt(2.0) : base;
}

struct Candidate {
  double mu;
  int m, k;
};

std::vector<Candidate> disk_candidates(double mu_cut, double radius) {
  std::vector<Candidate> out;
  for (int m = 0; m <= kBesselZeroMaxOrder; ++m) {
    double j1 = bessel_zero(m, 1);
    double mu1 = (j1 / radius) * (j1 / radius);
    if (mu1 > mu_cut) break;  // j_{m,1} increases with m
    for (int k = 1; k <= kBesselZeroMaxIndex; ++k) {
      double j = bessel_zero(m, k);
      double mu = (j / radius) * (j / radius);
      if (mu > mu_cut) break;
      out.push_back({mu, m, k});
    }
  }
  return out;
}

std::vector<Candidate> square_candidates(double mu_cut, double side) {
  std::vector<Candidate> out;
  const double f = kPi * kPi / (side * side);
  for (int kx = 1;; ++kx) {
    if (f * (kx * kx + 1) > mu_cut) break;
    for (int ky = 1;; ++ky) {
      double mu = f * (kx * kx + ky * ky);
      if (mu > mu_cut) break;
      out.push_back({mu, kx, ky});
    }
  }
  return out;
}

}  // namespace

int BasisSet::max_radial_index() const {
  int v = 1;
  for (const auto& md : modes) v = std::max(v, md.k);
  if (geom.kind == DomainKind::square)
    for (const auto& md : modes) v = std::max(v, md.m);
  return v;
}

int BasisSet::max_angular_index() const {
  int v = 0;
  for (const auto& md : modes) v = std::max(v, md.m);
  if (geom.kind == DomainKind::square)
    for (const auto& md : modes) v = std::max(v, md.k);
  return v;
}

BasisSet build_basis(const Geometry& geom, int n) {
  if (n < 1) throw std::invalid_argument("build_basis: n must be >= 1");

  // Weyl-law starting cut, grown until enough modes survive.
  double mu_cut = 4.0 * (n + 16.0) / geom.area() * kPi + 64.0;
  std::vector<Candidate> cand;
  for (int attempt = 0; attempt < 8; ++attempt) {
    cand = geom.kind == DomainKind::disk ? disk_candidates(mu_cut, geom.radius)
                                         : square_candidates(mu_cut, geom.side);
    int count = 0;
    for (const auto& c : cand) count += (geom.kind == DomainKind::disk && c.m >= 1) ? 2 : 1;
    if (count >= n) break;
    mu_cut *= 2.0;
  }

  std::sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.mu, a.m, a.k) < std::tie(b.mu, b.m, b.k);
  });

  BasisSet basis;
  basis.geom = geom;
  basis.modes.reserve(static_cast<size_t>(n));
  for (const auto& c : cand) {
    if (basis.size() >= n) break;
    BasisMode md;
    md.m = c.m;
    md.k = c.k;
    md.mu = c.mu;
    md.lambda = 2.0 + c.mu;
    if (geom.kind == DomainKind::disk) {
      md.root = bessel_zero(c.m, c.k);
      md.norm_const = disk_norm_const(c.m, md.root, geom.radius);
      md.parity = Parity::cosine;
      basis.modes.push_back(md);
      if (c.m >= 1 && basis.size() < n) {
        md.parity = Parity::sine;
        basis.modes.push_back(md);
      }
    } else {
      md.norm_const = 2.0 / geom.side;
      md.parity = Parity::cosine;
      basis.modes.push_back(md);
    }
  }
  if (basis.size() < n) throw std::out_of_range("build_basis: n exceeds table bounds");
  return basis;
}

namespace {

ModeEval eval_square(const Geometry& g, const BasisMode& md, Point p) {
  const double ax = md.m * kPi / g.side;
  const double ay = md.k * kPi / g.side;
  const double sx = std::sin(ax * p.x), cx = std::cos(ax * p.x);
  const double sy = std::sin(ay * p.y), cy = std::cos(ay * p.y);
  const double N = md.norm_const;
  ModeEval e;
  e.value = N * sx * sy;
  e.gx = N * ax * cx * sy;
  e.gy = N * ay * sx * cy;
  e.hxx = -ax * ax * e.value;
  e.hyy = -ay * ay * e.value;
  e.hxy = N * ax * ay * cx * cy;
  e.laplacian = -md.mu * e.value;
  e.px = -e.gy;
  e.py = e.gx;
  return e;
}

// Near the disk center: e = N sum_s b_s r^{2s} P_m(x,y) with
// P_m = Re/Im[(x+iy)^m] and b_s = (-1)^s (a/2)^{m+2s} / (s! (m+s)!), a = j/R.
ModeEval eval_disk_series(const BasisMode& md, double a, Point p) {
  using cplx = std::complex<double>;
  const int m = md.m;
  const double N = md.norm_const;
  const bool cos_part = (md.parity == Parity::cosine);

  double b[6];
  double b0 = 1.0;
  for (int i = 1; i <= m; ++i) b0 *= 0.5 * a / i;
  b[0] = b0;
  for (int s = 1; s < 6; ++s) b[s] = -b[s - 1] * 0.25 * a * a / (s * (m + s));

  const cplx z(p.x, p.y);
  // powers z^{m-2}, z^{m-1}, z^m (absent ones are zero)
  cplx zm = std::pow(z, m);
  cplx zm1 = m >= 1 ? std::pow(z, m - 1) : cplx(0.0);
  cplx zm2 = m >= 2 ? std::pow(z, m - 2) : cplx(0.0);
  auto part = [&](cplx w) { return cos_part ? w.real() : w.imag(); };

  const double r2 = p.x * p.x + p.y * p.y;
  ModeEval e;
  for (int s = 0; s < 6; ++s) {
    double r2s = std::pow(r2, s);
    double r2sm1 = s >= 1 ? std::pow(r2, s - 1) : 0.0;
    double r2sm2 = s >= 2 ? std::pow(r2, s - 2) : 0.0;
    const double P = part(zm);
    const double Px = m * part(zm1);
    const double Py = m * part(cplx(0, 1) * zm1);
    const double Pxx = m * (m - 1) * part(zm2);
    const double Pxy = m * (m - 1) * part(cplx(0, 1) * zm2);
    const double Pyy = -Pxx;  // P is harmonic
    const double c = N * b[s];
    e.value += c * r2s * P;
    e.gx += c * (2.0 * s * p.x * r2sm1 * P + r2s * Px);
    e.gy += c * (2.0 * s * p.y * r2sm1 * P + r2s * Py);
    e.hxx += c * (2.0 * s * r2sm1 * P + 4.0 * s * (s - 1) * p.x * p.x * r2sm2 * P +
                  4.0 * s * p.x * r2sm1 * Px + r2s * Pxx);
    e.hyy += c * (2.0 * s * r2sm1 * P + 4.0 * s * (s - 1) * p.y * p.y * r2sm2 * P +
                  4.0 * s * p.y * r2sm1 * Py + r2s * Pyy);
    e.hxy += c * (4.0 * s * (s - 1) * p.x * p.y * r2sm2 * P + 2.0 * s * p.x * r2sm1 * Py +
                  2.0 * s * p.y * r2sm1 * Px + r2s * Pxy);
  }
  e.laplacian = -md.mu * e.value;
  e.px = -e.gy;
  e.py = e.gx;
  return e;
}

ModeEval eval_disk(const Geometry& g, const BasisMode& md, Point p) {
  const double a = md.root / g.radius;  // radial frequency
  const double r = std::hypot(p.x, p.y);
  if (r < kPolarSwitch) return eval_disk_series(md, a, p);

  const int m = md.m;
  const double N = md.norm_const;
  const double ct = p.x / r, st = p.y / r;
  const double theta = std::atan2(p.y, p.x);

  auto w = bessel_j_window(m, a * r);
  const double J = w[2];
  const double Jp = 0.5 * (w[1] - w[3]);
  const double Jpp = 0.25 * (w[0] - 2.0 * w[2] + w[4]);

  const bool cos_part = (md.parity == Parity::cosine);
  const double A = cos_part ? std::cos(m * theta) : std::sin(m * theta);
  const double Ap = m * (cos_part ? -std::sin(m * theta) : std::cos(m * theta));
  const double App = -static_cast<double>(m) * m * A;

  const double u = N * J * A;
  const double ur = N * a * Jp * A;
  const double ut = N * J * Ap;
  const double urr = N * a * a * Jpp * A;
  const double urt = N * a * Jp * Ap;
  const double utt = N * J * App;

  ModeEval e;
  e.value = u;
  e.gx = ct * ur - st / r * ut;
  e.gy = st * ur + ct / r * ut;
  e.hxx = ct * ct * urr - 2.0 * ct * st / r * urt + st * st / (r * r) * utt +
          st * st / r * ur + 2.0 * ct * st / (r * r) * ut;
  e.hyy = st * st * urr + 2.0 * ct * st / r * urt + ct * ct / (r * r) * utt +
          ct * ct / r * ur - 2.0 * ct * st / (r * r) * ut;
  e.hxy = ct * st * urr + (ct * ct - st * st) / r * urt - ct * st / (r * r) * utt -
          ct * st / r * ur - (ct * ct - st * st) / (r * r) * ut;
  e.laplacian = -md.mu * u;
  e.px = -e.gy;
  e.py = e.gx;
  return e;
}

}  // namespace

ModeEval eval_mode(const Geometry& geom, const BasisMode& mode, Point p) {
  if (!geom.strictly_inside(p))
    throw std::domain_error("eval_mode: point on or outside the boundary");
  return geom.kind == DomainKind::square ? eval_square(geom, mode, p)
                                         : eval_disk(geom, mode, p);
}

std::vector<ModeEval> eval_mode(const Geometry& geom, const BasisMode& mode,
                                const std::vector<Point>& pts) {
  std::vector<ModeEval> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(eval_mode(geom, mode, p));
  return out;
}

std::string basis_table_csv(const BasisSet& basis) {
  std::string s = "index,m_or_k,k_or_l,parity,mu,lambda,norm_const\n";
  char buf[256];
  for (int i = 0; i < basis.size(); ++i) {
    const auto& md = basis.modes[static_cast<size_t>(i)];
    std::snprintf(buf, sizeof(buf), "%d,%d,%d,%s,%.17g,%.17g,%.17g\n", i, md.m, md.k,
                  md.parity == Parity::cosine ? "cos" : "sin", md.mu, md.lambda,
                  md.norm_const);
    s += buf;
  }
  return s;
}

}  // namespace mima
