#include "fbq/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace fbq {

namespace {

// Unweighted block norms ||Delta_j f||_p for j = -1 .. max_block.
std::vector<double> block_norms(const SpectralField& f, double p, DyadicConvention conv) {
  BesovSpec spec;
  spec.p = p;
  return besov_profile(f, spec, conv);
}

// l^q sum of 2^{js}(1+|j|)^gamma * blocks[j+1].
double reweighted(std::span<const double> blocks, double s, double gamma, double q) {
  std::vector<double> terms(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const int j = static_cast<int>(i) - 1;
    terms[i] = blocks[i] == 0.0 ? 0.0 : blocks[i] * std::exp2(j * s) * std::pow(1.0 + std::abs(j), gamma);
  }
  return lq_sum(terms, q);
}

// sum_k |k|^a |f(k)|^2.
double weighted_l2_squared(const SpectralField& f, double a) {
  const Grid& g = f.grid;
  double s = 0.0;
  for (int i1 = 0; i1 < g.n1(); ++i1) {
    const double k1 = g.k1(i1);
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      const double k2 = g.k2(i2);
      const double k2sq = k1 * k1 + k2 * k2;
      if (k2sq == 0.0) continue;
      s += std::pow(k2sq, 0.5 * a) * std::norm(f.at(i1, i2));
    }
  }
  return s;
}

SimState midpoint(const SimState& a, const SimState& b) {
  SimState m = a;
  m.t = 0.5 * (a.t + b.t);
  m.omega = 0.5 * (a.omega + b.omega);
  m.theta = 0.5 * (a.theta + b.theta);
  return m;
}

double ratio_or_zero(double num, double den) {
  if (num == 0.0) return 0.0;
  return num / den;
}

double commutator_ratio_impl(const SimState& s, const DiagnosticsSettings& set, std::span<const double> theta_inf) {
  const ParamSet& p = s.params;
  const Velocity u = biot_savart(s.omega, p);
  const SpectralField comm = commutator_field(u, s.theta, CommutatorSpec::riesz(p.alpha));
  BesovSpec cspec;
  cspec.s = 0.0;
  cspec.p = 2.0;
  cspec.q = 2.0;
  const double num = besov_norm(comm, cspec, set.conv);

  BesovSpec uspec;
  uspec.s = 1.0 - p.sigma - set.besov_eps;
  uspec.p = 2.0;
  uspec.q = kInf;
  uspec.homogeneous = true;
  const SpectralField comps[2] = {u.u1, u.u2};
  const double unorm = besov_norm(std::span<const SpectralField>(comps), uspec, set.conv);
  const double tnorm = reweighted(theta_inf, 1.0 + p.sigma + set.besov_eps - p.alpha, 0.0, 2.0) +
                       lp_norm(inverse(s.theta), kInf);
  return ratio_or_zero(num, unorm * tnorm);
}

DiagnosticsRecord fill(const SimState& s, const DiagnosticsSettings& set) {
  const ParamSet& p = s.params;
  DiagnosticsRecord r;
  r.t = s.t;

  auto [theta_x, omega_x] = inverse_pair(s.theta, s.omega);
  r.l2_theta = lp_norm(theta_x, 2.0);
  r.l4_theta = lp_norm(theta_x, 4.0);
  r.linf_theta = lp_norm(theta_x, kInf);
  r.l2_omega = lp_norm(omega_x, 2.0);
  r.linf_omega = lp_norm(omega_x, kInf);
  r.lp_omega = lp_norm(omega_x, set.lp_omega);

  const SpectralField G = compute_G(s);
  const PhysField G_x = inverse(G);
  r.l2_G = std::sqrt(spectral_l2_squared(G));
  r.diss_G = weighted_l2_squared(G, p.alpha);
  r.lq_G = lp_norm(G_x, set.lq);
  r.lr_G = lp_norm(G_x, 2.0 * set.lq / (2.0 - p.alpha));

  const auto omega_inf = block_norms(s.omega, kInf, set.conv);
  r.besov_omega_0gamma = reweighted(omega_inf, 0.0, p.gamma, 1.0);

  const auto theta_inf = block_norms(s.theta, kInf, set.conv);
  r.besov_theta_inf1 = reweighted(theta_inf, 1.0 - p.alpha + set.besov_eps, 0.0, 1.0);
  r.besov_theta_d1 = reweighted(theta_inf, 1.0 - p.alpha, p.gamma, 1.0);

  BesovSpec hs;
  hs.s = 1.0 - p.alpha;
  hs.p = 2.0;
  hs.q = 2.0;
  r.besov_theta_hs = besov_norm(s.theta, hs, set.conv);

  BesovSpec gs;
  gs.s = set.g_besov_s;
  gs.p = set.lq;
  gs.q = 1.0;
  r.besov_G = besov_norm(G, gs, set.conv);

  r.commutator_ratio = commutator_ratio_impl(s, set, theta_inf);
  return r;
}

double trapezoid_step(double t0, double t1, double y0, double y1) { return 0.5 * (t1 - t0) * (y0 + y1); }

}  // namespace

SpectralField compute_G(const SpectralField& omega, const SpectralField& theta, double alpha) {
  require_same_grid(omega.grid, theta.grid, "compute_G");
  return omega - apply_multiplier(MultiplierSpec::modified_riesz(alpha), theta);
}

SpectralField compute_G(const SimState& s) { return compute_G(s.omega, s.theta, s.params.alpha); }

SpectralField commutator_field(const Velocity& u, const SpectralField& f, const CommutatorSpec& spec) {
  require_same_grid(u.u1.grid, f.grid, "commutator_field");
  if (spec.kind == CommutatorKind::riesz_advection) {
    const auto R = MultiplierSpec::modified_riesz(spec.alpha);
    return apply_multiplier(R, advection(u, f)) - advection(u, apply_multiplier(R, f));
  }
  return dyadic_block(advection(u, f), spec.j, spec.conv) - advection(u, dyadic_block(f, spec.j, spec.conv));
}

double inner(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid, b.grid, "inner");
  double s = 0.0;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) s += (a.coeffs[i] * std::conj(b.coeffs[i])).real();
  return s;
}

EnergyBalance energy_balance(const SimState& prev, const SimState& next, DynamicsOptions opts) {
  require_same_grid(prev.omega.grid, next.omega.grid, "energy_balance");
  if (!(prev.params == next.params)) throw Error("energy_balance: parameter mismatch");
  const double dt = next.t - prev.t;
  if (!(dt > 0.0)) throw Error("energy_balance: states must be in increasing time order");
  const ParamSet& p = prev.params;

  const SpectralField G0 = compute_G(prev);
  const SpectralField G1 = compute_G(next);
  const SimState mid = midpoint(prev, next);
  const SpectralField Gm = compute_G(mid);

  EnergyBalance e;
  e.dissipation = weighted_l2_squared(Gm, p.alpha);
  e.lhs = (spectral_l2_squared(G1) - spectral_l2_squared(G0)) / (2.0 * dt) + p.nu * e.dissipation;

  const SpectralField d1theta = derivative(mid.theta, 1);
  const auto R = MultiplierSpec::modified_riesz(p.alpha);
  const SpectralField lin = apply_multiplier(MultiplierSpec::fractional_power(p.beta), apply_multiplier(R, mid.theta));
  e.rhs = p.kappa * inner(lin, Gm) + (1.0 - p.nu) * inner(d1theta, Gm);
  if (opts.advection) {
    const Velocity u = biot_savart(mid.omega, p);
    e.rhs += inner(commutator_field(u, mid.theta, CommutatorSpec::riesz(p.alpha)), Gm);
  }
  e.residual = std::abs(e.lhs - e.rhs) / std::max(e.dissipation, kResidualFloor);
  return e;
}

double energy_balance_residual(const SimState& prev, const SimState& next, DynamicsOptions opts) {
  return energy_balance(prev, next, opts).residual;
}

double commutator_ratio(const SimState& s, const DiagnosticsSettings& settings) {
  const auto theta_inf = block_norms(s.theta, kInf, settings.conv);
  return commutator_ratio_impl(s, settings, theta_inf);
}

DiagnosticsRecord snapshot_record(const SimState& s, const DiagnosticsSettings& settings) {
  return fill(s, settings);
}

Recorder::Recorder(DiagnosticsSettings settings, DynamicsOptions opts) : settings_(settings), opts_(opts) {
  if (!(settings_.besov_eps > 0.0)) throw Error("diagnostics: besov_eps must be positive");
  if (!(settings_.lq >= 1.0) || !(settings_.lp_omega >= 1.0)) throw Error("diagnostics: exponents must be >= 1");
}

const DiagnosticsRecord& Recorder::record(const SimState& s, const SimState* prev) {
  DiagnosticsRecord r = fill(s, settings_);
  if (prev) r.energy_residual = energy_balance_residual(*prev, s, opts_);
  if (!records_.empty()) {
    const DiagnosticsRecord& last = records_.back();
    if (!(r.t > last.t)) throw Error("diagnostics: records must have increasing time");
    r.diss_G_cum = last.diss_G_cum + trapezoid_step(last.t, r.t, last.diss_G, r.diss_G);
    r.cum_l1t_besov_omega =
        last.cum_l1t_besov_omega + trapezoid_step(last.t, r.t, last.besov_omega_0gamma, r.besov_omega_0gamma);
    r.cum_l1t_lr_G = last.cum_l1t_lr_G + trapezoid_step(last.t, r.t, last.lr_G, r.lr_G);
    r.cum_l1t_besov_G = last.cum_l1t_besov_G + trapezoid_step(last.t, r.t, last.besov_G, r.besov_G);
  }
  records_.push_back(r);
  return records_.back();
}

std::vector<double> osgood_majorant(double Y0, std::span<const double> t, std::span<const double> D1,
                                    std::span<const double> D2, double C, int substeps) {
  if (t.size() != D1.size() || t.size() != D2.size()) throw Error("osgood_majorant: size mismatch");
  if (!(Y0 >= 0.0)) throw Error("osgood_majorant: Y0 must be >= 0");
  if (!(C > 0.0)) throw Error("osgood_majorant: C must be positive");
  if (substeps < 1) throw Error("osgood_majorant: substeps must be >= 1");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(D1[i] >= 0.0) || !(D2[i] >= 0.0)) throw Error("osgood_majorant: D1 and D2 must be >= 0");
    if (i > 0 && !(t[i] > t[i - 1])) throw Error("osgood_majorant: times must be strictly increasing");
  }
  std::vector<double> Y(t.size(), 0.0);
  if (t.empty() || Y0 == 0.0) return Y;

  // Integrated in z = log Y, where the equation reads
  //   z' = C D1 (log(1 + D2 e^{-z}) + 1)
  // and stays smooth as Y -> 0.
  auto rate = [C](double z, double d1, double d2) {
    double l = 0.0;
    if (d2 > 0.0) {
      const double a = std::log(d2) - z;
      l = a > 30.0 ? a + std::log1p(std::exp(-a)) : std::log1p(std::exp(a));
    }
    return C * d1 * (l + 1.0);
  };
  Y[0] = Y0;
  double z = std::log(Y0);
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const double span = t[i + 1] - t[i];
    const double h = span / substeps;
    auto d1_at = [&](double tau) { return D1[i] + (D1[i + 1] - D1[i]) * (tau - t[i]) / span; };
    auto d2_at = [&](double tau) { return D2[i] + (D2[i + 1] - D2[i]) * (tau - t[i]) / span; };
    for (int m = 0; m < substeps; ++m) {
      const double tau = t[i] + m * h;
      const double a1 = d1_at(tau), a2 = d2_at(tau);
      const double b1 = d1_at(tau + 0.5 * h), b2 = d2_at(tau + 0.5 * h);
      const double c1 = d1_at(tau + h), c2 = d2_at(tau + h);
      const double k1 = rate(z, a1, a2);
      const double k2 = rate(z + 0.5 * h * k1, b1, b2);
      const double k3 = rate(z + 0.5 * h * k2, b1, b2);
      const double k4 = rate(z + h * k3, c1, c2);
      z += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    Y[i + 1] = std::exp(z);
  }
  return Y;
}

double twin_functional(const SimState& a, const SimState& b, DyadicConvention conv) {
  require_same_grid(a.omega.grid, b.omega.grid, "twin_functional");
  if (!(a.params == b.params)) throw Error("twin_functional: parameter mismatch");
  const SpectralField dtheta = b.theta - a.theta;
  ParamSet plain = a.params;
  plain.gamma = 0.0;
  const Velocity v = biot_savart(b.omega - a.omega, plain);

  BesovSpec tspec;
  tspec.s = -a.params.alpha;
  tspec.p = 2.0;
  tspec.q = kInf;
  BesovSpec vspec;
  vspec.s = 0.0;
  vspec.p = 2.0;
  vspec.q = kInf;
  const SpectralField comps[2] = {v.u1, v.u2};
  return besov_norm(dtheta, tspec, conv) + besov_norm(std::span<const SpectralField>(comps), vspec, conv);
}

namespace {

struct TwinDrivers {
  double D1;
  double D2;
};

TwinDrivers drivers(const SimState& a, const SimState& b, DyadicConvention conv) {
  const double g = a.params.gamma;
  const double th = reweighted(block_norms(a.theta, kInf, conv), 1.0 - a.params.alpha, g, 1.0);
  const double w1 = reweighted(block_norms(a.omega, kInf, conv), 0.0, g, 1.0);
  const double w2 = reweighted(block_norms(b.omega, kInf, conv), 0.0, g, 1.0);
  return {th + w1 + w2, std::sqrt(spectral_l2_squared(a.omega)) + std::sqrt(spectral_l2_squared(b.omega))};
}

double omega_max(const SimState& s) { return lp_norm(inverse(s.omega), kInf); }

}  // namespace

std::vector<TwinSample> twin_stability(const SimState& run1, const SimState& run2, const TwinOptions& opts) {
  require_same_grid(run1.omega.grid, run2.omega.grid, "twin_stability");
  if (!(run1.params == run2.params)) throw Error("twin_stability: parameter mismatch");
  if (!(opts.t_end > 0.0) || !(opts.diag_interval > 0.0)) throw Error("twin_stability: t_end and diag_interval must be positive");
  if (!(opts.max_dt > 0.0)) throw Error("twin_stability: max_dt must be positive");

  const Dynamics dyn(run1.omega.grid, run1.params, opts.dynamics);
  SimState a = run1, b = run2;
  const double ref_a = omega_max(a);
  const double ref_b = omega_max(b);
  const double limit_a = opts.guard_factor * (ref_a > 0.0 ? ref_a : 1.0);
  const double limit_b = opts.guard_factor * (ref_b > 0.0 ? ref_b : 1.0);

  std::vector<TwinSample> out;
  auto sample = [&]() {
    const TwinDrivers d = drivers(a, b, opts.conv);
    out.push_back({a.t, twin_functional(a, b, opts.conv), 0.0, d.D1, d.D2});
  };
  sample();

  const double t0 = a.t;
  const auto intervals = static_cast<long>(std::ceil(opts.t_end / opts.diag_interval - 1e-9));
  for (long m = 1; m <= intervals; ++m) {
    const double target = t0 + std::min(opts.t_end, m * opts.diag_interval);
    while (a.t < target) {
      const double remaining = target - a.t;
      double cap = opts.fixed_dt;
      if (!(cap > 0.0))
        cap = std::min({cfl_dt(a, opts.cfl_safety), cfl_dt(b, opts.cfl_safety), opts.max_dt});
      const auto n = std::max(1.0, std::ceil(remaining / cap - 1e-9));
      const StepScheme scheme{SchemeKind::if_rk4, remaining / n};
      a = dyn.step(a, scheme);
      b = dyn.step(b, scheme);
      if (n == 1.0) a.t = b.t = target;
      if (omega_max(a) > limit_a || omega_max(b) > limit_b)
        throw BlowUpError("twin_stability: vorticity guard tripped at t = " + std::to_string(a.t));
    }
    sample();
  }

  std::vector<double> t(out.size()), d1(out.size()), d2(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    t[i] = out[i].t;
    d1[i] = out[i].D1;
    d2[i] = out[i].D2;
  }
  const auto maj = osgood_majorant(2.0 * out[0].Y, t, d1, d2, opts.C, opts.substeps);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].majorant = maj[i];
  return out;
}

}  // namespace fbq
