#pragma once

// Littlewood-Paley blocks and the Besov norm families built on them:
// inhomogeneous / homogeneous B^{s,gamma}_{p,q}, and the space-time norms
// L^rho_T B and its tilde variant (time integral inside the l^q sum).

#include <optional>
#include <span>
#include <vector>

#include "fbq/multipliers.hpp"
#include "fbq/spectral.hpp"

namespace fbq {

struct DyadicConvention {
  DyadicMode mode = DyadicMode::sharp;
};

/// Identifies ||.||_{B^{s,gamma_log}_{p,q}}; weight 2^{js} (1+|j|)^{gamma_log}.
struct BesovSpec {
  double s = 0.0;
  double p = 2.0;
  double q = 2.0;
  double gamma_log = 0.0;
  bool homogeneous = false;
  /// Time exponent for space-time norms; unused by besov_norm.
  double rho = 1.0;
  /// Tilde variant: time integral per block, l^q last.
  bool tilde = false;

  void validate() const;
};

SpectralField dyadic_block(const SpectralField& f, int j, DyadicConvention conv = {});
/// S_j f = sum_{-1 <= m <= j-1} Delta_m f.
SpectralField low_pass(const SpectralField& f, int j, DyadicConvention conv = {});

/// Per-block weighted norms 2^{js}(1+|j|)^gamma ||Delta_j f||_p, starting at
/// j = -1 (or 0 when homogeneous) up to max_block(grid).
std::vector<double> besov_profile(const SpectralField& f, const BesovSpec& spec, DyadicConvention conv = {});

/// Vector-valued variant: the block L^p norm is of the pointwise Euclidean
/// magnitude of (Delta_j f_1, ..., Delta_j f_m).
std::vector<double> besov_profile(std::span<const SpectralField> components, const BesovSpec& spec,
                                  DyadicConvention conv = {});

/// l^q sum of a block profile (q = infinity gives the max).
double lq_sum(std::span<const double> terms, double q);

double besov_norm(const SpectralField& f, const BesovSpec& spec, DyadicConvention conv = {});
double besov_norm(std::span<const SpectralField> components, const BesovSpec& spec, DyadicConvention conv = {});

struct TimedField {
  double t;
  SpectralField field;
};

/// ||f||_{L^rho_T B} (or the tilde variant when spec.tilde), trapezoid rule in
/// time. Requires >= 2 samples with strictly increasing timestamps.
double spacetime_besov_norm(std::span<const TimedField> history, const BesovSpec& spec,
                            DyadicConvention conv = {});

/// Trapezoid integral of samples; throws when sizes differ or t is not increasing.
double trapezoid(std::span<const double> t, std::span<const double> y);

}  // namespace fbq
