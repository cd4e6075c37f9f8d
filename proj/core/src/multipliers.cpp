#include "fbq/multipliers.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace fbq {

namespace {

// 1 for t <= 0, 0 for t >= 1, cos^2 ramp in between.
double ramp(double t) {
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  const double c = std::cos(0.5 * std::numbers::pi * t);
  return c * c;
}

std::int64_t pow4(int j) { return std::int64_t{1} << (2 * j); }

}  // namespace

double low_pass_weight(int j, std::int64_t k2sq, DyadicMode mode) {
  if (j < 0) return 0.0;
  if (mode == DyadicMode::sharp) return k2sq <= pow4(j) ? 1.0 : 0.0;
  if (k2sq == 0) return 1.0;
  return ramp(0.5 * std::log2(double(k2sq)) - j);
}

double dyadic_weight(int j, std::int64_t k2sq, DyadicMode mode) {
  if (j < -1) return 0.0;
  if (mode == DyadicMode::sharp) {
    if (j == -1) return k2sq <= 1 ? 1.0 : 0.0;
    return (k2sq > pow4(j) && k2sq <= pow4(j + 1)) ? 1.0 : 0.0;
  }
  return low_pass_weight(j + 1, k2sq, mode) - low_pass_weight(j, k2sq, mode);
}

int max_block(const Grid& g) {
  const std::int64_t h1 = g.n1() / 2, h2 = g.n2() / 2;
  const std::int64_t kmax2 = h1 * h1 + h2 * h2;
  int j = -1;
  while (pow4(j + 1) < kmax2) ++j;
  return j;
}

void ParamSet::validate(bool allow_inviscid) const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(alpha) || !finite(beta) || !finite(sigma) || !finite(gamma) || !finite(nu) || !finite(kappa))
    throw Error("params: all parameters must be finite");
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error("params: alpha must lie in (0,1)");
  if (!(beta > 0.0 && beta <= 1.0)) throw Error("params: beta must lie in (0,1]");
  if (sigma < 0.0) throw Error("params: sigma must be >= 0");
  if (gamma < 0.0) throw Error("params: gamma must be >= 0");
  if (nu < 0.0 || kappa < 0.0) throw Error("params: nu and kappa must be >= 0");
  if (!allow_inviscid && (nu == 0.0 || kappa == 0.0))
    throw Error("params: nu = 0 or kappa = 0 requires the inviscid test flag");
}

MultiplierSpec MultiplierSpec::fractional_power(double s) {
  if (!std::isfinite(s)) throw Error("multiplier: fractional_power exponent must be finite");
  return {Kind::fractional_power, s, 0.0, 0, DyadicMode::sharp};
}

MultiplierSpec MultiplierSpec::modified_riesz(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error("multiplier: modified_riesz requires alpha in (0,1)");
  return {Kind::modified_riesz, alpha, 0.0, 0, DyadicMode::sharp};
}

MultiplierSpec MultiplierSpec::log_power(double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw Error("multiplier: log_power requires gamma >= 0");
  return {Kind::log_power, 0.0, gamma, 0, DyadicMode::sharp};
}

MultiplierSpec MultiplierSpec::velocity_law(double sigma, double gamma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw Error("multiplier: velocity_law requires sigma >= 0");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw Error("multiplier: velocity_law requires gamma >= 0");
  return {Kind::velocity_law, sigma, gamma, 0, DyadicMode::sharp};
}

MultiplierSpec MultiplierSpec::dyadic_block(int j, DyadicMode mode) {
  if (j < -1) throw Error("multiplier: dyadic_block requires j >= -1");
  return {Kind::dyadic_block, 0.0, 0.0, j, mode};
}

MultiplierSpec MultiplierSpec::low_pass(int j, DyadicMode mode) {
  if (j < -1) throw Error("multiplier: low_pass requires j >= -1");
  return {Kind::low_pass, 0.0, 0.0, j, mode};
}

Complex MultiplierSpec::symbol(int k1, int k2) const {
  const std::int64_t k2sq = std::int64_t(k1) * k1 + std::int64_t(k2) * k2;
  switch (kind_) {
    case Kind::fractional_power:
      if (k2sq == 0) return a_ == 0.0 ? 1.0 : 0.0;
      return std::pow(double(k2sq), 0.5 * a_);
    case Kind::modified_riesz:
      if (k2sq == 0) return 0.0;
      return Complex(0.0, k1 * std::pow(double(k2sq), -0.5 * a_));
    case Kind::log_power:
      if (b_ == 0.0) return 1.0;
      if (k2sq == 0) return 0.0;
      return std::pow(std::log1p(double(k2sq)), b_);
    case Kind::velocity_law: {
      if (k2sq == 0) return (a_ == 0.0 && b_ == 0.0) ? 1.0 : 0.0;
      const double radial = a_ == 0.0 ? 1.0 : std::pow(double(k2sq), 0.5 * a_);
      const double logf = b_ == 0.0 ? 1.0 : std::pow(std::log1p(double(k2sq)), b_);
      return radial * logf;
    }
    case Kind::dyadic_block:
      return dyadic_weight(j_, k2sq, mode_);
    case Kind::low_pass:
      return low_pass_weight(j_, k2sq, mode_);
  }
  return 0.0;
}

Complex MultiplierSpec::lattice_symbol(const Grid& g, int k1, int k2) const {
  if (odd_in_k1() && 2 * k1 == -g.n1()) return 0.0;
  return symbol(k1, k2);
}

std::string MultiplierSpec::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::fractional_power: os << "fractional_power(" << a_ << ")"; break;
    case Kind::modified_riesz: os << "modified_riesz(" << a_ << ")"; break;
    case Kind::log_power: os << "log_power(" << b_ << ")"; break;
    case Kind::velocity_law: os << "velocity_law(" << a_ << "," << b_ << ")"; break;
    case Kind::dyadic_block: os << "dyadic_block(" << j_ << ")"; break;
    case Kind::low_pass: os << "low_pass(" << j_ << ")"; break;
  }
  return os.str();
}

SpectralField apply_multiplier(const MultiplierSpec& m, const SpectralField& f) {
  const Grid& g = f.grid;
  SpectralField out(g);
  for (int i1 = 0; i1 < g.n1(); ++i1) {
    const int k1 = g.k1(i1);
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      const Complex c = f.at(i1, i2);
      if (c == Complex{}) continue;
      out.at(i1, i2) = m.lattice_symbol(g, k1, g.k2(i2)) * c;
    }
  }
  return out;
}

SpectralField derivative(const SpectralField& f, int axis) {
  if (axis != 1 && axis != 2) throw Error("derivative: axis must be 1 or 2");
  const Grid& g = f.grid;
  SpectralField out(g);
  for (int i1 = 0; i1 < g.n1(); ++i1) {
    const int k1 = g.k1(i1);
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      const int k2 = g.k2(i2);
      const int k = axis == 1 ? k1 : k2;
      const int n = axis == 1 ? g.n1() : g.n2();
      if (2 * k == -n) continue;
      out.at(i1, i2) = Complex(0.0, double(k)) * f.at(i1, i2);
    }
  }
  return out;
}

Velocity biot_savart(const SpectralField& omega, const ParamSet& params) {
  const Grid& g = omega.grid;
  const auto law = MultiplierSpec::velocity_law(params.sigma, params.gamma);
  Velocity u{SpectralField(g), SpectralField(g)};
  for (int i1 = 0; i1 < g.n1(); ++i1) {
    const int k1 = g.k1(i1);
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      const int k2 = g.k2(i2);
      if (k1 == 0 && k2 == 0) continue;
      if (2 * k1 == -g.n1() || 2 * k2 == -g.n2()) continue;
      const double k2sq = double(k1) * k1 + double(k2) * k2;
      // psi_hat = -m_P / |k|^2 * omega_hat
      const Complex psi = -(law.symbol(k1, k2).real() / k2sq) * omega.at(i1, i2);
      u.u1.at(i1, i2) = Complex(0.0, -double(k2)) * psi;
      u.u2.at(i1, i2) = Complex(0.0, double(k1)) * psi;
    }
  }
  return u;
}

double divergence_defect(const Velocity& u) {
  require_same_grid(u.u1.grid, u.u2.grid, "divergence_defect");
  const Grid& g = u.u1.grid;
  double d = 0.0;
  for (int i1 = 0; i1 < g.n1(); ++i1)
    for (int i2 = 0; i2 < g.n2(); ++i2)
      d = std::max(d, std::abs(double(g.k1(i1)) * u.u1.at(i1, i2) + double(g.k2(i2)) * u.u2.at(i1, i2)));
  return d;
}

}  // namespace fbq
