#include "fbq/besov.hpp"

#include <algorithm>
#include <cmath>

namespace fbq {

namespace {

SpectralField masked(const SpectralField& f, const MultiplierSpec& m) { return apply_multiplier(m, f); }

double block_weight(int j, const BesovSpec& spec) {
  return std::exp2(j * spec.s) * std::pow(1.0 + std::abs(j), spec.gamma_log);
}

// L^p norm of the pointwise magnitude of a set of blocks.
double block_lp(std::span<const SpectralField> blocks, double p) {
  if (p == 2.0) {
    double s = 0.0;
    for (const auto& b : blocks) s += spectral_l2_squared(b);
    return std::sqrt(s);
  }
  if (blocks.size() == 1) {
    const auto v = inverse_complex(blocks[0]);
    return lp_norm(std::span<const Complex>(v), p);
  }
  std::vector<double> mag(blocks[0].grid.size(), 0.0);
  for (const auto& b : blocks) {
    const auto v = inverse_complex(b);
    for (std::size_t i = 0; i < v.size(); ++i) mag[i] += std::norm(v[i]);
  }
  for (auto& m : mag) m = std::sqrt(m);
  return lp_norm(std::span<const double>(mag), p);
}

bool is_zero(const SpectralField& f) {
  return std::all_of(f.coeffs.begin(), f.coeffs.end(), [](const Complex& c) { return c == Complex{}; });
}

}  // namespace

void BesovSpec::validate() const {
  if (!std::isfinite(s)) throw Error("besov: s must be finite");
  if (!(p >= 1.0)) throw Error("besov: p must lie in [1, inf]");
  if (!(q >= 1.0)) throw Error("besov: q must lie in [1, inf]");
  if (!(gamma_log >= 0.0) || !std::isfinite(gamma_log)) throw Error("besov: gamma_log must be >= 0");
  if (!(rho >= 1.0)) throw Error("besov: rho must lie in [1, inf]");
}

SpectralField dyadic_block(const SpectralField& f, int j, DyadicConvention conv) {
  if (j < -1) throw Error("dyadic_block: j must be >= -1");
  if (j > max_block(f.grid)) return SpectralField(f.grid);
  return masked(f, MultiplierSpec::dyadic_block(j, conv.mode));
}

SpectralField low_pass(const SpectralField& f, int j, DyadicConvention conv) {
  if (j < -1) throw Error("low_pass: j must be >= -1");
  return masked(f, MultiplierSpec::low_pass(j, conv.mode));
}

std::vector<double> besov_profile(std::span<const SpectralField> components, const BesovSpec& spec,
                                  DyadicConvention conv) {
  spec.validate();
  if (components.empty()) throw Error("besov: no components");
  const Grid& g = components[0].grid;
  for (const auto& c : components) require_same_grid(g, c.grid, "besov");
  const int jmax = max_block(g);
  const int j0 = spec.homogeneous ? 0 : -1;
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(jmax - j0 + 1));

  // Blocks of a real field are real, so two of them share one transform.
  if (components.size() == 1 && spec.p != 2.0 && hermitian_defect(components[0]) == 0.0) {
    std::vector<SpectralField> blocks;
    for (int j = j0; j <= jmax; ++j) blocks.push_back(dyadic_block(components[0], j, conv));
    for (std::size_t i = 0; i < blocks.size(); i += 2) {
      const SpectralField& a = blocks[i];
      const SpectralField& b = i + 1 < blocks.size() ? blocks[i + 1] : SpectralField(g);
      auto [xa, xb] = inverse_pair(a, b);
      terms.push_back(is_zero(a) ? 0.0 : lp_norm(xa, spec.p));
      if (i + 1 < blocks.size()) terms.push_back(is_zero(b) ? 0.0 : lp_norm(xb, spec.p));
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const int j = j0 + static_cast<int>(i);
      if (terms[i] != 0.0) terms[i] *= block_weight(j, spec);
    }
    return terms;
  }

  std::vector<SpectralField> blocks;
  for (int j = j0; j <= jmax; ++j) {
    blocks.clear();
    bool empty = true;
    for (const auto& c : components) {
      blocks.push_back(dyadic_block(c, j, conv));
      empty = empty && is_zero(blocks.back());
    }
    terms.push_back(empty ? 0.0 : block_weight(j, spec) * block_lp(blocks, spec.p));
  }
  return terms;
}

std::vector<double> besov_profile(const SpectralField& f, const BesovSpec& spec, DyadicConvention conv) {
  return besov_profile(std::span<const SpectralField>(&f, 1), spec, conv);
}

double lq_sum(std::span<const double> terms, double q) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (double t : terms) m = std::max(m, t);
    return m;
  }
  if (q == 1.0) {
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
  }
  double m = 0.0;
  for (double t : terms) m = std::max(m, t);
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double t : terms) s += std::pow(t / m, q);
  return m * std::pow(s, 1.0 / q);
}

double besov_norm(std::span<const SpectralField> components, const BesovSpec& spec, DyadicConvention conv) {
  const auto terms = besov_profile(components, spec, conv);
  return lq_sum(terms, spec.q);
}

double besov_norm(const SpectralField& f, const BesovSpec& spec, DyadicConvention conv) {
  return besov_norm(std::span<const SpectralField>(&f, 1), spec, conv);
}

double trapezoid(std::span<const double> t, std::span<const double> y) {
  if (t.size() != y.size()) throw Error("trapezoid: size mismatch");
  double s = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) throw Error("trapezoid: timestamps must be strictly increasing");
    s += 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
  }
  return s;
}

namespace {

// (int_0^T y^rho dt)^{1/rho}; rho = infinity gives sup_t y.
double time_norm(std::span<const double> t, std::span<const double> y, double rho) {
  if (std::isinf(rho)) return *std::max_element(y.begin(), y.end());
  if (rho == 1.0) return trapezoid(t, y);
  std::vector<double> yp(y.size());
  std::transform(y.begin(), y.end(), yp.begin(), [rho](double v) { return std::pow(v, rho); });
  return std::pow(trapezoid(t, yp), 1.0 / rho);
}

}  // namespace

double spacetime_besov_norm(std::span<const TimedField> history, const BesovSpec& spec, DyadicConvention conv) {
  spec.validate();
  if (history.size() < 2) throw Error("spacetime_besov_norm: need at least 2 samples");
  std::vector<double> t(history.size());
  for (std::size_t n = 0; n < history.size(); ++n) {
    t[n] = history[n].t;
    if (n > 0 && !(t[n] > t[n - 1])) throw Error("spacetime_besov_norm: timestamps must be strictly increasing");
  }
  if (!spec.tilde) {
    std::vector<double> y(history.size());
    for (std::size_t n = 0; n < history.size(); ++n) y[n] = besov_norm(history[n].field, spec, conv);
    return time_norm(t, y, spec.rho);
  }
  std::vector<std::vector<double>> profiles;
  profiles.reserve(history.size());
  for (const auto& h : history) profiles.push_back(besov_profile(h.field, spec, conv));
  const std::size_t nblocks = profiles[0].size();
  std::vector<double> per_block(nblocks);
  std::vector<double> y(history.size());
  for (std::size_t b = 0; b < nblocks; ++b) {
    for (std::size_t n = 0; n < history.size(); ++n) y[n] = profiles[n][b];
    per_block[b] = time_norm(t, y, spec.rho);
  }
  return lq_sum(per_block, spec.q);
}

}  // namespace fbq
