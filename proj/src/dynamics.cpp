#include "mima/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace mima {

namespace {

void contract_triads(const CouplingTensors& T, std::span<const double> c,
                     std::span<double> acc) {
  const int n = T.size();
  // q_l = gamma_l + mu_l c_l, the coefficients of g_delta - lap(phi)
  static thread_local std::vector<double> q;
  q.resize(static_cast<size_t>(n));
  const bool has_gamma = !T.gamma.empty();
  for (int l = 0; l < n; ++l)
    q[static_cast<size_t>(l)] = (has_gamma ? T.gamma[static_cast<size_t>(l)] : 0.0) +
                                T.stiff_diag[static_cast<size_t>(l)] * c[static_cast<size_t>(l)];
  for (const auto& e : T.triads)
    acc[static_cast<size_t>(e.i)] -=
        e.t * c[static_cast<size_t>(e.j)] * q[static_cast<size_t>(e.l)];
}

bool finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

void rhs_nonstiff(const CouplingTensors& T, std::span<const double> c,
                  std::span<double> out) {
  const int n = T.size();
  if (static_cast<int>(c.size()) != n || static_cast<int>(out.size()) != n)
    throw std::invalid_argument("rhs: coefficient length mismatch");
  if (!finite(c)) throw std::runtime_error("rhs: non-finite input state");
  for (auto& v : out) v = 0.0;
  contract_triads(T, c, out);
  const bool has_gamma = !T.gamma.empty();
  for (int i = 0; i < n; ++i) {
    const size_t si = static_cast<size_t>(i);
    if (has_gamma) out[si] -= T.eps * T.stiff_diag[si] * T.gamma[si];
    out[si] /= T.mass_diag[si];
  }
}

void rhs(const CouplingTensors& T, std::span<const double> c, std::span<double> out) {
  rhs_nonstiff(T, c, out);
  for (int i = 0; i < T.size(); ++i) {
    const size_t si = static_cast<size_t>(i);
    out[si] -= T.eps * T.stiff_diag[si] * c[si];
  }
}

Trajectory integrate(const SpectralField& phi0, const CouplingTensors& tensors,
                     const IntegratorConfig& config,
                     const std::function<void(const SpectralField&)>& on_sample) {
  if (config.dt <= 0.0 || config.t_end <= 0.0 || config.dt > config.t_end)
    throw std::invalid_argument("integrate: need 0 < dt <= t_end");
  if (config.sample_every < 1)
    throw std::invalid_argument("integrate: sample_every must be >= 1");
  if (phi0.basis != tensors.basis)
    throw std::invalid_argument("integrate: state and tensors use different bases");

  const int n = tensors.size();
  const double h = config.dt;
  const long steps = std::lround(config.t_end / h);

  // coarse stability guard: nonlinear rate ~ mu_max * |c|_max * sqrt(mu_max)
  Trajectory traj;
  {
    double mu_max = 0.0, c_max = 0.0;
    for (int i = 0; i < n; ++i) mu_max = std::max(mu_max, tensors.stiff_diag[static_cast<size_t>(i)]);
    for (double v : phi0.c) c_max = std::max(c_max, std::abs(v));
    const double rate = mu_max * c_max * std::sqrt(mu_max);
    if (rate > 0.0 && h > 0.5 / rate) {
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "dt=%g exceeds stability guard 0.5/rate=%g (rate estimate %g)", h,
                    0.5 / rate, rate);
      traj.warnings.emplace_back(buf);
    }
  }

  // exponential factors for the stiff diagonal
  std::vector<double> e_half(static_cast<size_t>(n)), e_full(static_cast<size_t>(n));
  const bool use_if = (config.scheme == Scheme::if_rk4);
  for (int i = 0; i < n; ++i) {
    const double a = tensors.eps * tensors.stiff_diag[static_cast<size_t>(i)];
    e_half[static_cast<size_t>(i)] = use_if ? std::exp(-a * 0.5 * h) : 1.0;
    e_full[static_cast<size_t>(i)] = use_if ? std::exp(-a * h) : 1.0;
  }

  auto eval = use_if ? rhs_nonstiff : rhs;

  std::vector<double> c = phi0.c;
  std::vector<double> k1(c.size()), k2(c.size()), k3(c.size()), k4(c.size()),
      u(c.size());

  auto store = [&](long step) {
    SpectralField s;
    s.basis = phi0.basis;
    s.c = c;
    s.t = static_cast<double>(step) * h;
    traj.samples.push_back(s);
    if (on_sample) on_sample(traj.samples.back());
  };

  store(0);
  for (long step = 0; step < steps; ++step) {
    // Lawson-RK4: classical RK4 in the exponentially transformed variable
    eval(tensors, c, k1);
    for (size_t i = 0; i < c.size(); ++i) u[i] = e_half[i] * (c[i] + 0.5 * h * k1[i]);
    eval(tensors, u, k2);
    for (size_t i = 0; i < c.size(); ++i) u[i] = e_half[i] * c[i] + 0.5 * h * k2[i];
    eval(tensors, u, k3);
    for (size_t i = 0; i < c.size(); ++i) u[i] = e_full[i] * c[i] + h * e_half[i] * k3[i];
    eval(tensors, u, k4);
    for (size_t i = 0; i < c.size(); ++i)
      c[i] = e_full[i] * c[i] +
             (h / 6.0) * (e_full[i] * k1[i] + 2.0 * e_half[i] * (k2[i] + k3[i]) + k4[i]);

    if (!finite(c)) {
      traj.aborted = true;
      char buf[96];
      std::snprintf(buf, sizeof(buf), "non-finite state at t=%.17g", (step + 1) * h);
      traj.error = buf;
      return traj;
    }
    if ((step + 1) % config.sample_every == 0 || step + 1 == steps) store(step + 1);
  }
  return traj;
}

}  // namespace mima
