#pragma once

// Fourier multipliers: fractional powers of the Laplacian, the modified Riesz
// transform d1 Lambda^{-alpha}, the logarithmic velocity law and dyadic cutoffs.
//
// Zero-mode gauge: any symbol that is singular or vanishes at k = 0 is set to
// 0 there. Odd symbols (containing a factor i k_m) are zeroed on the Nyquist
// line k_m = -n_m/2, whose mirror image is itself, so real fields stay real.

#include <cstdint>
#include <string>

#include "fbq/spectral.hpp"

namespace fbq {

enum class DyadicMode { sharp, smooth };

/// Weight of block j >= -1 at |k|^2 = k2sq. Sharp blocks are
/// {|k| <= 1} for j = -1 and {2^j < |k| <= 2^{j+1}} otherwise; smooth blocks
/// use raised-cosine ramps in log2|k| supported in 2^j < |k| < 2^{j+2}.
double dyadic_weight(int j, std::int64_t k2sq, DyadicMode mode);
/// Weight of S_j = sum_{m <= j-1} Delta_m.
double low_pass_weight(int j, std::int64_t k2sq, DyadicMode mode);
/// Highest block index with nonzero support on the grid.
int max_block(const Grid& g);

/// Physical and regularity parameters of the system.
struct ParamSet {
  double alpha = 0.95;
  double beta = 0.08;
  double sigma = 0.0;
  double gamma = 0.0;
  double nu = 1.0;
  double kappa = 1.0;

  /// Throws fbq::Error on out-of-range values. nu = kappa = 0 is accepted only
  /// when allow_inviscid is set.
  void validate(bool allow_inviscid = false) const;
  bool operator==(const ParamSet&) const = default;
};

class MultiplierSpec {
public:
  enum class Kind { fractional_power, modified_riesz, log_power, velocity_law, dyadic_block, low_pass };

  static MultiplierSpec fractional_power(double s);
  static MultiplierSpec modified_riesz(double alpha);
  static MultiplierSpec log_power(double gamma);
  static MultiplierSpec velocity_law(double sigma, double gamma);
  static MultiplierSpec dyadic_block(int j, DyadicMode mode = DyadicMode::sharp);
  static MultiplierSpec low_pass(int j, DyadicMode mode = DyadicMode::sharp);

  Kind kind() const { return kind_; }
  double exponent() const { return a_; }
  double log_exponent() const { return b_; }
  int block() const { return j_; }
  DyadicMode mode() const { return mode_; }

  /// True for symbols of the form i k1 * (real radial).
  bool odd_in_k1() const { return kind_ == Kind::modified_riesz; }

  /// Symbol at integer wavenumber k, gauge applied at k = 0.
  Complex symbol(int k1, int k2) const;
  /// Symbol as applied on a grid (adds the Nyquist rule for odd symbols).
  Complex lattice_symbol(const Grid& g, int k1, int k2) const;

  std::string describe() const;
  bool operator==(const MultiplierSpec&) const = default;

private:
  MultiplierSpec(Kind k, double a, double b, int j, DyadicMode m) : kind_(k), a_(a), b_(b), j_(j), mode_(m) {}
  Kind kind_;
  double a_;
  double b_;
  int j_;
  DyadicMode mode_;
};

SpectralField apply_multiplier(const MultiplierSpec& m, const SpectralField& f);

/// d/dx_axis for axis in {1, 2}.
SpectralField derivative(const SpectralField& f, int axis);

struct Velocity {
  SpectralField u1;
  SpectralField u2;
};

/// u = grad^perp psi with Laplacian(psi) = Lambda^sigma (log(I - Laplacian))^gamma omega,
/// psi mean-free. Nyquist lines carry no velocity, which keeps k.u(k) = 0 on
/// every lattice mode.
Velocity biot_savart(const SpectralField& omega, const ParamSet& params);

/// max_k |k . u(k)|.
double divergence_defect(const Velocity& u);

}  // namespace fbq
