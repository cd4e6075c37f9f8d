#pragma once

// Periodic grids on [0, 2pi)^2, FFT-backed transforms, 2/3-rule dealiasing and
// L^p norms with the normalized measure dx/(2pi)^2.

#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace fbq {

using Complex = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Square-period grid with n1 x n2 collocation nodes. Both sizes are powers of
/// two and at least 8.
class Grid {
public:
  Grid() : Grid(8, 8) {}
  Grid(int n1, int n2);
  explicit Grid(int n) : Grid(n, n) {}

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  std::size_t size() const { return static_cast<std::size_t>(n1_) * n2_; }

  /// Row-major storage index; i1 runs along x1.
  std::size_t index(int i1, int i2) const {
    return static_cast<std::size_t>(i1) * n2_ + i2;
  }

  /// Signed wavenumber of storage position i (FFT ordering), in [-n/2, n/2).
  static int wavenumber(int i, int n) { return i < n / 2 ? i : i - n; }
  int k1(int i1) const { return wavenumber(i1, n1_); }
  int k2(int i2) const { return wavenumber(i2, n2_); }

  /// Storage position of a signed wavenumber (taken modulo n).
  static int position(int k, int n) { return ((k % n) + n) % n; }

  /// Storage index of the mirrored wavenumber -k.
  std::size_t mirror(int i1, int i2) const {
    return index((n1_ - i1) % n1_, (n2_ - i2) % n2_);
  }

  bool operator==(const Grid&) const = default;

private:
  int n1_;
  int n2_;
};

/// Real values at nodes x_ij = (2 pi i / n1, 2 pi j / n2), row-major.
struct PhysField {
  Grid grid;
  std::vector<double> values;

  PhysField() = default;
  explicit PhysField(const Grid& g) : grid(g), values(g.size(), 0.0) {}
  PhysField(const Grid& g, std::vector<double> v);

  double& operator()(int i1, int i2) { return values[grid.index(i1, i2)]; }
  double operator()(int i1, int i2) const { return values[grid.index(i1, i2)]; }
};

/// Fourier coefficients c(k) = <f, e^{ik.x}> with the normalized measure, so
/// c(0) is the mean. Storage is row-major in FFT ordering.
struct SpectralField {
  Grid grid;
  std::vector<Complex> coeffs;

  SpectralField() = default;
  explicit SpectralField(const Grid& g) : grid(g), coeffs(g.size(), Complex{}) {}
  SpectralField(const Grid& g, std::vector<Complex> c);

  Complex& at(int i1, int i2) { return coeffs[grid.index(i1, i2)]; }
  const Complex& at(int i1, int i2) const { return coeffs[grid.index(i1, i2)]; }

  /// Coefficient of the signed wavenumber (k1, k2).
  Complex& mode(int k1, int k2) {
    return coeffs[grid.index(Grid::position(k1, grid.n1()), Grid::position(k2, grid.n2()))];
  }
  const Complex& mode(int k1, int k2) const {
    return coeffs[grid.index(Grid::position(k1, grid.n1()), Grid::position(k2, grid.n2()))];
  }

  Complex mean() const { return coeffs[0]; }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

/// Throws fbq::Error if the grids differ.
void require_same_grid(const Grid& a, const Grid& b, const char* what);

SpectralField forward(const PhysField& f);
/// Real part of the synthesis; exact for Hermitian-symmetric inputs.
PhysField inverse(const SpectralField& f);
/// Full complex synthesis, for fields that need not be Hermitian.
std::vector<Complex> inverse_complex(const SpectralField& f);

/// Two real fields through one complex FFT each way.
std::pair<PhysField, PhysField> inverse_pair(const SpectralField& a, const SpectralField& b);
std::pair<SpectralField, SpectralField> forward_pair(const PhysField& a, const PhysField& b);

/// Zeroes every mode with 3|k1| > n1 or 3|k2| > n2.
SpectralField dealias(SpectralField f);
bool dealias_keeps(const Grid& g, int k1, int k2);

/// Normalized L^p norm over collocation nodes; p = infinity gives the max.
double lp_norm(const PhysField& f, double p);
double lp_norm(std::span<const double> values, double p);
double lp_norm(std::span<const Complex> values, double p);

/// sum_k |c(k)|^2, equal to lp_norm(inverse(f), 2)^2 by Parseval.
double spectral_l2_squared(const SpectralField& f);

/// max over k of |c(-k) - conj(c(k))|.
double hermitian_defect(const SpectralField& f);

double max_abs_diff(const SpectralField& a, const SpectralField& b);
double max_abs_diff(const PhysField& a, const PhysField& b);
double max_abs(const SpectralField& f);

/// Copies the modes a coarse grid shares with `f` (all others dropped or zero).
SpectralField resample(const SpectralField& f, const Grid& target);

}  // namespace fbq
