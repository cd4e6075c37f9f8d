#include "fbq/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace fbq {

namespace {

bool all_finite(const SpectralField& f) {
  return std::all_of(f.coeffs.begin(), f.coeffs.end(),
                     [](const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

// sum_m u_m * g_m at the nodes, for physical u and gradient components.
PhysField dot(const PhysField& u1, const PhysField& u2, const PhysField& g1, const PhysField& g2) {
  PhysField out(u1.grid);
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = u1.values[i] * g1.values[i] + u2.values[i] * g2.values[i];
  return out;
}

SpectralField finish_flux(SpectralField f) {
  f = dealias(std::move(f));
  f.coeffs[0] = Complex{};
  return f;
}

}  // namespace

SpectralField advection(const Velocity& u, const SpectralField& f) {
  require_same_grid(u.u1.grid, f.grid, "advection");
  auto [p1, p2] = inverse_pair(u.u1, u.u2);
  auto [g1, g2] = inverse_pair(derivative(f, 1), derivative(f, 2));
  return finish_flux(forward(dot(p1, p2, g1, g2)));
}

Dynamics::Dynamics(const Grid& grid, const ParamSet& params, DynamicsOptions opts)
    : grid_(grid), params_(params), opts_(opts), rate_omega_(grid.size()), rate_theta_(grid.size()) {
  params_.validate(opts_.allow_inviscid);
  for (int i1 = 0; i1 < grid_.n1(); ++i1) {
    const int k1 = grid_.k1(i1);
    for (int i2 = 0; i2 < grid_.n2(); ++i2) {
      const int k2 = grid_.k2(i2);
      const double k2sq = double(k1) * k1 + double(k2) * k2;
      const std::size_t idx = grid_.index(i1, i2);
      rate_omega_[idx] = k2sq == 0.0 ? 0.0 : params_.nu * std::pow(k2sq, 0.5 * params_.alpha);
      rate_theta_[idx] = k2sq == 0.0 ? 0.0 : params_.kappa * std::pow(k2sq, 0.5 * params_.beta);
    }
  }
}

void Dynamics::check_state(const SimState& s) const {
  require_same_grid(grid_, s.omega.grid, "dynamics (omega)");
  require_same_grid(grid_, s.theta.grid, "dynamics (theta)");
}

const Dynamics::Factors& Dynamics::factors(double dt) const {
  if (cache_.dt == dt) return cache_;
  const std::size_t n = grid_.size();
  cache_.w_full.resize(n);
  cache_.w_half.resize(n);
  cache_.t_full.resize(n);
  cache_.t_half.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    cache_.w_full[i] = std::exp(-rate_omega_[i] * dt);
    cache_.w_half[i] = std::exp(-rate_omega_[i] * 0.5 * dt);
    cache_.t_full[i] = std::exp(-rate_theta_[i] * dt);
    cache_.t_half[i] = std::exp(-rate_theta_[i] * 0.5 * dt);
  }
  cache_.dt = dt;
  return cache_;
}

Tendency Dynamics::nonlinear(const SimState& s) const {
  check_state(s);
  Tendency out{derivative(s.theta, 1), SpectralField(grid_)};
  if (!opts_.advection) return out;

  const Velocity u = biot_savart(s.omega, params_);
  auto [p1, p2] = inverse_pair(u.u1, u.u2);
  auto [w1, w2] = inverse_pair(derivative(s.omega, 1), derivative(s.omega, 2));
  auto [t1, t2] = inverse_pair(derivative(s.theta, 1), derivative(s.theta, 2));
  auto [adv_w, adv_t] = forward_pair(dot(p1, p2, w1, w2), dot(p1, p2, t1, t2));
  out.domega -= finish_flux(std::move(adv_w));
  out.dtheta -= finish_flux(std::move(adv_t));
  return out;
}

Tendency Dynamics::tendency(const SimState& s) const {
  Tendency out = nonlinear(s);
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    out.domega.coeffs[i] -= rate_omega_[i] * s.omega.coeffs[i];
    out.dtheta.coeffs[i] -= rate_theta_[i] * s.theta.coeffs[i];
  }
  return out;
}

SimState Dynamics::step(const SimState& s, const StepScheme& scheme) const {
  check_state(s);
  if (!(scheme.dt > 0.0) || !std::isfinite(scheme.dt)) throw Error("step: dt must be positive");
  const double dt = scheme.dt;
  const std::size_t n = grid_.size();

  std::vector<double> ew, et, hw, ht;
  {
    std::lock_guard lock(mu_);
    const Factors& f = factors(dt);
    ew = f.w_full;
    et = f.t_full;
    hw = f.w_half;
    ht = f.t_half;
  }

  SimState out = s;
  out.t = s.t + dt;

  if (scheme.kind == SchemeKind::if_euler) {
    const Tendency a = nonlinear(s);
    for (std::size_t i = 0; i < n; ++i) {
      out.omega.coeffs[i] = ew[i] * (s.omega.coeffs[i] + dt * a.domega.coeffs[i]);
      out.theta.coeffs[i] = et[i] * (s.theta.coeffs[i] + dt * a.dtheta.coeffs[i]);
    }
  } else {
    const Tendency a = nonlinear(s);
    SimState stage = s;
    for (std::size_t i = 0; i < n; ++i) {
      stage.omega.coeffs[i] = hw[i] * (s.omega.coeffs[i] + 0.5 * dt * a.domega.coeffs[i]);
      stage.theta.coeffs[i] = ht[i] * (s.theta.coeffs[i] + 0.5 * dt * a.dtheta.coeffs[i]);
    }
    const Tendency b = nonlinear(stage);
    for (std::size_t i = 0; i < n; ++i) {
      stage.omega.coeffs[i] = hw[i] * s.omega.coeffs[i] + 0.5 * dt * b.domega.coeffs[i];
      stage.theta.coeffs[i] = ht[i] * s.theta.coeffs[i] + 0.5 * dt * b.dtheta.coeffs[i];
    }
    const Tendency c = nonlinear(stage);
    for (std::size_t i = 0; i < n; ++i) {
      stage.omega.coeffs[i] = ew[i] * s.omega.coeffs[i] + dt * hw[i] * c.domega.coeffs[i];
      stage.theta.coeffs[i] = et[i] * s.theta.coeffs[i] + dt * ht[i] * c.dtheta.coeffs[i];
    }
    const Tendency d = nonlinear(stage);
    const double w = dt / 6.0;
    for (std::size_t i = 0; i < n; ++i) {
      out.omega.coeffs[i] =
          ew[i] * s.omega.coeffs[i] +
          w * (ew[i] * a.domega.coeffs[i] + 2.0 * hw[i] * (b.domega.coeffs[i] + c.domega.coeffs[i]) +
               d.domega.coeffs[i]);
      out.theta.coeffs[i] =
          et[i] * s.theta.coeffs[i] +
          w * (et[i] * a.dtheta.coeffs[i] + 2.0 * ht[i] * (b.dtheta.coeffs[i] + c.dtheta.coeffs[i]) +
               d.dtheta.coeffs[i]);
    }
  }

  if (!all_finite(out.omega) || !all_finite(out.theta))
    throw BlowUpError("step: non-finite values at t = " + std::to_string(out.t));
  return out;
}

Tendency tendency(const SimState& s, DynamicsOptions opts) {
  return Dynamics(s.omega.grid, s.params, opts).tendency(s);
}

SimState step(const SimState& s, const StepScheme& scheme, DynamicsOptions opts) {
  return Dynamics(s.omega.grid, s.params, opts).step(s, scheme);
}

double max_velocity(const SimState& s) {
  const Velocity u = biot_savart(s.omega, s.params);
  auto [p1, p2] = inverse_pair(u.u1, u.u2);
  return std::max(lp_norm(p1, kInf), lp_norm(p2, kInf));
}

double cfl_dt(const SimState& s, double safety) {
  if (!(safety > 0.0 && safety <= 1.0)) throw Error("cfl_dt: safety must lie in (0,1]");
  const Grid& g = s.omega.grid;
  const double dx = 2.0 * std::numbers::pi / std::max(g.n1(), g.n2());
  return safety * dx / std::max(max_velocity(s), kVelocityFloor);
}

SpectralField random_bandlimited(const Grid& g, std::uint64_t seed, double slope, double k_cut, double l2_norm) {
  if (!(k_cut > 0.0)) throw Error("random_bandlimited: k_cut must be positive");
  if (!(l2_norm >= 0.0)) throw Error("random_bandlimited: norm must be >= 0");
  // exp(-K^2/k_cut^2) < 1e-20 outside the box.
  const int K = static_cast<int>(std::ceil(6.8 * k_cut));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  struct Mode {
    int k1, k2;
    Complex c;
  };
  std::vector<Mode> modes;
  double energy = 0.0;
  for (int k1 = 0; k1 <= K; ++k1) {
    for (int k2 = -K; k2 <= K; ++k2) {
      if (k1 == 0 && k2 <= 0) continue;
      const double re = normal(rng);
      const double im = normal(rng);
      const double k2sq = double(k1) * k1 + double(k2) * k2;
      if (k2sq > double(K) * K) continue;
      const double amp = std::pow(k2sq, -0.5 * slope) * std::exp(-k2sq / (k_cut * k_cut));
      const Complex c = amp * Complex(re, im);
      modes.push_back({k1, k2, c});
      energy += 2.0 * std::norm(c);
    }
  }
  const double scale = energy > 0.0 ? l2_norm / std::sqrt(energy) : 0.0;
  SpectralField f(g);
  for (const auto& m : modes) {
    if (!dealias_keeps(g, m.k1, m.k2)) continue;
    f.mode(m.k1, m.k2) = scale * m.c;
    f.mode(-m.k1, -m.k2) = std::conj(scale * m.c);
  }
  return f;
}

}  // namespace fbq
