#pragma once

// Vorticity-form dynamics on the torus:
//   d_t omega + u.grad omega + nu Lambda^alpha omega = d_1 theta
//   d_t theta + u.grad theta + kappa Lambda^beta theta = 0
// with u from biot_savart. Pseudospectral advection with 2/3-rule dealiasing,
// integrating-factor time stepping for the diagonal dissipation.

#include <cstdint>
#include <mutex>
#include <vector>

#include "fbq/multipliers.hpp"
#include "fbq/spectral.hpp"

namespace fbq {

struct SimState {
  double t = 0.0;
  SpectralField omega;
  SpectralField theta;
  ParamSet params;
};

struct Tendency {
  SpectralField domega;
  SpectralField dtheta;
};

enum class SchemeKind { if_rk4, if_euler };

struct StepScheme {
  SchemeKind kind = SchemeKind::if_rk4;
  double dt = 1e-3;
};

struct DynamicsOptions {
  /// Off: u.grad terms are dropped (linear/coupling-only runs for testing).
  bool advection = true;
  /// Accept nu = 0 or kappa = 0.
  bool allow_inviscid = false;
};

/// Raised when a step produces NaN/Inf.
class BlowUpError : public Error {
public:
  using Error::Error;
};

/// dealias(u.grad f) formed pseudospectrally; the k = 0 mode is set to zero,
/// as the flux of a divergence-free field has zero mean.
SpectralField advection(const Velocity& u, const SpectralField& f);

/// Precomputed operator tables for one (grid, params) pair.
class Dynamics {
public:
  Dynamics(const Grid& grid, const ParamSet& params, DynamicsOptions opts = {});

  const Grid& grid() const { return grid_; }
  const ParamSet& params() const { return params_; }
  const DynamicsOptions& options() const { return opts_; }

  Tendency tendency(const SimState& s) const;
  /// Advective and coupling part only (everything except the dissipation).
  Tendency nonlinear(const SimState& s) const;
  SimState step(const SimState& s, const StepScheme& scheme) const;

  /// Dissipation rates nu|k|^alpha and kappa|k|^beta, per storage index.
  const std::vector<double>& omega_rate() const { return rate_omega_; }
  const std::vector<double>& theta_rate() const { return rate_theta_; }

private:
  struct Factors {
    double dt = -1.0;
    std::vector<double> w_full, w_half, t_full, t_half;
  };
  const Factors& factors(double dt) const;
  void check_state(const SimState& s) const;

  Grid grid_;
  ParamSet params_;
  DynamicsOptions opts_;
  std::vector<double> rate_omega_;
  std::vector<double> rate_theta_;
  mutable std::mutex mu_;
  mutable Factors cache_;
};

Tendency tendency(const SimState& s, DynamicsOptions opts = {});
SimState step(const SimState& s, const StepScheme& scheme, DynamicsOptions opts = {});

inline constexpr double kVelocityFloor = 1e-8;

/// safety * dx / max(||u1||_inf, ||u2||_inf, 1e-8), dx = 2 pi / max(n1, n2).
double cfl_dt(const SimState& s, double safety);

/// max(||u1||_inf, ||u2||_inf) at the collocation nodes.
double max_velocity(const SimState& s);

/// Real random field with coefficient modulus ~ |k|^{-slope} exp(-|k|^2/k_cut^2),
/// zero mean, scaled to the given L^2 norm. The spectrum is drawn over a fixed
/// wavenumber box independent of the grid and then restricted to the grid's
/// dealiased band, so the same seed gives the same continuous field on every
/// resolution.
SpectralField random_bandlimited(const Grid& g, std::uint64_t seed, double slope, double k_cut, double l2_norm);

}  // namespace fbq
