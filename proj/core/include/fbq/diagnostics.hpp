#pragma once

// Derived quantities tracked along a trajectory: G = omega - R_alpha theta,
// commutator fields, the discrete energy balance for G, per-sample records
// with trapezoid-accumulated time integrals, and the twin-run stability
// functional with its Osgood majorant.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fbq/besov.hpp"
#include "fbq/dynamics.hpp"

namespace fbq {

SpectralField compute_G(const SimState& s);
SpectralField compute_G(const SpectralField& omega, const SpectralField& theta, double alpha);

enum class CommutatorKind { riesz_advection, block_advection };

struct CommutatorSpec {
  CommutatorKind kind = CommutatorKind::riesz_advection;
  double alpha = 0.95;
  int j = 0;
  DyadicConvention conv{};

  static CommutatorSpec riesz(double alpha) { return {CommutatorKind::riesz_advection, alpha, 0, {}}; }
  static CommutatorSpec block(int j, DyadicConvention conv = {}) {
    return {CommutatorKind::block_advection, 0.95, j, conv};
  }
};

/// T(u.grad f) - u.grad(T f) with T = R_alpha or Delta_j; both products go
/// through advection(), so the dealiasing is identical on each side.
SpectralField commutator_field(const Velocity& u, const SpectralField& f, const CommutatorSpec& spec);

/// sum_k Re(a(k) conj(b(k))), the collocation mean of a*b.
double inner(const SpectralField& a, const SpectralField& b);

inline constexpr double kResidualFloor = 1e-30;

struct EnergyBalance {
  double lhs = 0.0;
  double rhs = 0.0;
  /// ||Lambda^{alpha/2} G||^2 at the midpoint.
  double dissipation = 0.0;
  double residual = 0.0;
};

/// Discrete energy identity for G over one step prev -> next:
///   (|G1|^2 - |G0|^2) / (2 dt) + nu |Lambda^{alpha/2} Gm|^2
///     = <C(um, thm), Gm> + kappa <Lambda^{beta-alpha} d1 thm, Gm> + (1 - nu) <d1 thm, Gm>
/// with midpoint fields and C the Riesz commutator. residual = |lhs - rhs|
/// divided by max(dissipation, kResidualFloor).
EnergyBalance energy_balance(const SimState& prev, const SimState& next, DynamicsOptions opts = {});
double energy_balance_residual(const SimState& prev, const SimState& next, DynamicsOptions opts = {});

struct DiagnosticsSettings {
  double besov_eps = 0.01;
  /// Lebesgue exponent for ||G||_{L^q}; also the q of the tracked B^{s}_{q,1} norm of G.
  double lq = 20.0 / 9.0 - 0.01;
  double lp_omega = 4.0;
  /// Regularity index of the tracked ||G||_{L^1_t B^{s}_{q,1}}.
  double g_besov_s = 0.9;
  DyadicConvention conv{};
};

struct DiagnosticsRecord {
  double t = 0.0;
  double l2_theta = 0.0;
  double l4_theta = 0.0;
  double linf_theta = 0.0;
  double l2_G = 0.0;
  /// ||Lambda^{alpha/2} G||^2 at t; diss_G_cum is its trapezoid integral.
  double diss_G = 0.0;
  double diss_G_cum = 0.0;
  double lq_G = 0.0;
  /// ||G||_{L^r}, r = 2q/(2 - alpha), and its time integral.
  double lr_G = 0.0;
  double cum_l1t_lr_G = 0.0;
  double lp_omega = 0.0;
  double l2_omega = 0.0;
  double linf_omega = 0.0;
  /// ||omega||_{B^{0,gamma}_{inf,1}}.
  double besov_omega_0gamma = 0.0;
  /// ||theta||_{H^{1-alpha}}.
  double besov_theta_hs = 0.0;
  /// ||theta||_{B^{1-alpha+eps}_{inf,1}}.
  double besov_theta_inf1 = 0.0;
  /// ||theta||_{B^{1-alpha,gamma}_{inf,1}}.
  double besov_theta_d1 = 0.0;
  /// ||G||_{B^{s}_{q,1}} and its time integral.
  double besov_G = 0.0;
  double cum_l1t_besov_G = 0.0;
  double energy_residual = 0.0;
  double commutator_ratio = 0.0;
  double cum_l1t_besov_omega = 0.0;
};

/// Commutator norm over the right-hand side combination
///   ||u||_{Bdot^{1-sigma-eps}_{2,inf}} (||theta||_{B^{1+sigma+eps-alpha}_{inf,2}} + ||theta||_{L^inf}),
/// commutator measured in B^0_{2,2}. Zero when both sides vanish.
double commutator_ratio(const SimState& s, const DiagnosticsSettings& settings);

/// Builds the record series, carrying the running time integrals.
class Recorder {
public:
  explicit Recorder(DiagnosticsSettings settings = {}, DynamicsOptions opts = {});

  /// `prev` is the state one step before `s`, used for the energy residual;
  /// without it the residual is recorded as 0.
  const DiagnosticsRecord& record(const SimState& s, const SimState* prev = nullptr);

  const std::vector<DiagnosticsRecord>& records() const { return records_; }
  const DiagnosticsSettings& settings() const { return settings_; }

private:
  DiagnosticsSettings settings_;
  DynamicsOptions opts_;
  std::vector<DiagnosticsRecord> records_;
};

/// Instantaneous fields of a record (time integrals left at 0).
DiagnosticsRecord snapshot_record(const SimState& s, const DiagnosticsSettings& settings);

/// Integrates Y' = C D1(t) (Y log(1 + D2(t)/Y) + Y) from Y(t0) = Y0 over the
/// sample times with classical RK4 in log Y, `substeps` steps per sample
/// interval and D1, D2 linearly interpolated. Y0 = 0 gives the zero function.
std::vector<double> osgood_majorant(double Y0, std::span<const double> t, std::span<const double> D1,
                                    std::span<const double> D2, double C = 1.0, int substeps = 16);

struct TwinSample {
  double t = 0.0;
  double Y = 0.0;
  double majorant = 0.0;
  double D1 = 0.0;
  double D2 = 0.0;
};

/// Y = ||theta2 - theta1||_{B^{-alpha}_{2,inf}} + ||v2 - v1||_{B^0_{2,inf}},
/// v = (log(I - Laplacian))^{-gamma} u.
double twin_functional(const SimState& a, const SimState& b, DyadicConvention conv = {});

struct TwinOptions {
  double C = 1.0;
  int substeps = 16;
  double cfl_safety = 0.5;
  double max_dt = 1e-2;
  /// Positive: constant step instead of the CFL rule.
  double fixed_dt = 0.0;
  double diag_interval = 0.01;
  double t_end = 1.0;
  double guard_factor = 1e6;
  DynamicsOptions dynamics{};
  DyadicConvention conv{};
};

/// Advances both states with a shared step size (the smaller CFL step of the
/// two) and samples Y on the diagnostic grid. The majorant starts from 2 Y(0).
/// Throws BlowUpError if either run blows up.
std::vector<TwinSample> twin_stability(const SimState& run1, const SimState& run2, const TwinOptions& opts);

}  // namespace fbq
