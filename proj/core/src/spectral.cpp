#include "fbq/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace fbq {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// In-place, unaligned plans so they can run on std::vector storage. FFTW_ESTIMATE
// keeps the chosen algorithm, and hence the rounding, identical across runs.
struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  ~PlanPair() {
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
  }
};

class PlanCache {
public:
  const PlanPair& get(const Grid& g) {
    std::lock_guard lock(mu_);
    auto key = std::make_pair(g.n1(), g.n2());
    auto it = plans_.find(key);
    if (it != plans_.end()) return *it->second;
    auto p = std::make_unique<PlanPair>();
    fftw_complex* buf = fftw_alloc_complex(g.size());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p->fwd = fftw_plan_dft_2d(g.n1(), g.n2(), buf, buf, FFTW_FORWARD, flags);
    p->bwd = fftw_plan_dft_2d(g.n1(), g.n2(), buf, buf, FFTW_BACKWARD, flags);
    fftw_free(buf);
    if (!p->fwd || !p->bwd) throw Error("fftw: plan creation failed");
    return *plans_.emplace(key, std::move(p)).first->second;
  }

private:
  std::mutex mu_;
  std::map<std::pair<int, int>, std::unique_ptr<PlanPair>> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

void run(fftw_plan plan, std::vector<Complex>& data) {
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, p, p);
}

// Hermitian part of a spectrum of a real signal, exact by construction.
void symmetrize(const Grid& g, std::vector<Complex>& c) {
  std::vector<Complex> out(c.size());
  for (int i1 = 0; i1 < g.n1(); ++i1)
    for (int i2 = 0; i2 < g.n2(); ++i2)
      out[g.index(i1, i2)] = 0.5 * (c[g.index(i1, i2)] + std::conj(c[g.mirror(i1, i2)]));
  c.swap(out);
}

}  // namespace

Grid::Grid(int n1, int n2) : n1_(n1), n2_(n2) {
  if (!is_pow2(n1) || !is_pow2(n2) || n1 < 8 || n2 < 8)
    throw Error("grid: sizes must be powers of two >= 8, got " + std::to_string(n1) + "x" +
                std::to_string(n2));
}

PhysField::PhysField(const Grid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
  if (values.size() != g.size())
    throw Error("phys field: data length " + std::to_string(values.size()) +
                " does not match grid size " + std::to_string(g.size()));
}

SpectralField::SpectralField(const Grid& g, std::vector<Complex> c) : grid(g), coeffs(std::move(c)) {
  if (coeffs.size() != g.size())
    throw Error("spectral field: data length " + std::to_string(coeffs.size()) +
                " does not match grid size " + std::to_string(g.size()));
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b))
    throw Error(std::string(what) + ": grid mismatch (" + std::to_string(a.n1()) + "x" +
                std::to_string(a.n2()) + " vs " + std::to_string(b.n1()) + "x" +
                std::to_string(b.n2()) + ")");
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_same_grid(grid, o.grid, "add");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_same_grid(grid, o.grid, "subtract");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs) c *= s;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

SpectralField forward(const PhysField& f) {
  if (f.values.size() != f.grid.size()) throw Error("forward: data length does not match grid");
  std::vector<Complex> data(f.values.begin(), f.values.end());
  run(plan_cache().get(f.grid).fwd, data);
  const double scale = 1.0 / static_cast<double>(f.grid.size());
  for (auto& c : data) c *= scale;
  symmetrize(f.grid, data);
  return SpectralField(f.grid, std::move(data));
}

std::vector<Complex> inverse_complex(const SpectralField& f) {
  if (f.coeffs.size() != f.grid.size()) throw Error("inverse: data length does not match grid");
  std::vector<Complex> data = f.coeffs;
  run(plan_cache().get(f.grid).bwd, data);
  return data;
}

PhysField inverse(const SpectralField& f) {
  auto data = inverse_complex(f);
  PhysField out(f.grid);
  for (std::size_t i = 0; i < data.size(); ++i) out.values[i] = data[i].real();
  return out;
}

std::pair<PhysField, PhysField> inverse_pair(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid, b.grid, "inverse_pair");
  const Complex I(0.0, 1.0);
  std::vector<Complex> data(a.grid.size());
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = a.coeffs[i] + I * b.coeffs[i];
  run(plan_cache().get(a.grid).bwd, data);
  PhysField ra(a.grid), rb(a.grid);
  for (std::size_t i = 0; i < data.size(); ++i) {
    ra.values[i] = data[i].real();
    rb.values[i] = data[i].imag();
  }
  return {std::move(ra), std::move(rb)};
}

std::pair<SpectralField, SpectralField> forward_pair(const PhysField& a, const PhysField& b) {
  require_same_grid(a.grid, b.grid, "forward_pair");
  const Grid& g = a.grid;
  std::vector<Complex> z(g.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = Complex(a.values[i], b.values[i]);
  run(plan_cache().get(g).fwd, z);
  const double scale = 1.0 / static_cast<double>(g.size());
  SpectralField fa(g), fb(g);
  for (int i1 = 0; i1 < g.n1(); ++i1) {
    for (int i2 = 0; i2 < g.n2(); ++i2) {
      const std::size_t k = g.index(i1, i2);
      const Complex zk = z[k] * scale;
      const Complex zm = std::conj(z[g.mirror(i1, i2)] * scale);
      fa.coeffs[k] = 0.5 * (zk + zm);
      fb.coeffs[k] = Complex(0.0, -0.5) * (zk - zm);
    }
  }
  return {std::move(fa), std::move(fb)};
}

bool dealias_keeps(const Grid& g, int k1, int k2) {
  return 3 * std::abs(k1) <= g.n1() && 3 * std::abs(k2) <= g.n2();
}

SpectralField dealias(SpectralField f) {
  const Grid& g = f.grid;
  for (int i1 = 0; i1 < g.n1(); ++i1) {
    const int k1 = g.k1(i1);
    for (int i2 = 0; i2 < g.n2(); ++i2)
      if (!dealias_keeps(g, k1, g.k2(i2))) f.at(i1, i2) = Complex{};
  }
  return f;
}

namespace {

template <class Abs>
double lp_impl(std::size_t n, Abs&& abs_at, double p) {
  if (!(p >= 1.0)) throw Error("lp_norm: p must be >= 1");
  if (n == 0) return 0.0;
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, abs_at(i));
    return m;
  }
  double sum = 0.0;
  if (p == 1.0) {
    for (std::size_t i = 0; i < n; ++i) sum += abs_at(i);
    return sum / static_cast<double>(n);
  }
  if (p == 2.0) {
    for (std::size_t i = 0; i < n; ++i) {
      const double a = abs_at(i);
      sum += a * a;
    }
    return std::sqrt(sum / static_cast<double>(n));
  }
  // Scale by the max to keep |v|^p in range for large p.
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, abs_at(i));
  if (m == 0.0) return 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += std::pow(abs_at(i) / m, p);
  return m * std::pow(sum / static_cast<double>(n), 1.0 / p);
}

}  // namespace

double lp_norm(std::span<const double> values, double p) {
  return lp_impl(values.size(), [&](std::size_t i) { return std::abs(values[i]); }, p);
}

double lp_norm(std::span<const Complex> values, double p) {
  return lp_impl(values.size(), [&](std::size_t i) { return std::abs(values[i]); }, p);
}

double lp_norm(const PhysField& f, double p) { return lp_norm(std::span<const double>(f.values), p); }

double spectral_l2_squared(const SpectralField& f) {
  double s = 0.0;
  for (const auto& c : f.coeffs) s += std::norm(c);
  return s;
}

double hermitian_defect(const SpectralField& f) {
  const Grid& g = f.grid;
  double d = 0.0;
  for (int i1 = 0; i1 < g.n1(); ++i1)
    for (int i2 = 0; i2 < g.n2(); ++i2)
      d = std::max(d, std::abs(f.coeffs[g.mirror(i1, i2)] - std::conj(f.at(i1, i2))));
  return d;
}

double max_abs_diff(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid, b.grid, "max_abs_diff");
  double d = 0.0;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) d = std::max(d, std::abs(a.coeffs[i] - b.coeffs[i]));
  return d;
}

double max_abs_diff(const PhysField& a, const PhysField& b) {
  require_same_grid(a.grid, b.grid, "max_abs_diff");
  double d = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) d = std::max(d, std::abs(a.values[i] - b.values[i]));
  return d;
}

double max_abs(const SpectralField& f) {
  double d = 0.0;
  for (const auto& c : f.coeffs) d = std::max(d, std::abs(c));
  return d;
}

SpectralField resample(const SpectralField& f, const Grid& target) {
  SpectralField out(target);
  // Nyquist lines of the smaller grid have no unambiguous partner; drop them.
  const int h1 = std::min(f.grid.n1(), target.n1()) / 2;
  const int h2 = std::min(f.grid.n2(), target.n2()) / 2;
  for (int k1 = -h1 + 1; k1 < h1; ++k1)
    for (int k2 = -h2 + 1; k2 < h2; ++k2) out.mode(k1, k2) = f.mode(k1, k2);
  return out;
}

}  // namespace fbq
