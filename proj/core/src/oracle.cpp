#include "fbq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "fbq/besov.hpp"
#include "fbq/diagnostics.hpp"
#include "fbq/dynamics.hpp"

namespace fbq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Brute-force reference, indexed [k1 + n/2][k2 + n/2] for k in [-n/2, n/2).
struct Ref {
  int n;
  std::vector<Complex> c;

  explicit Ref(int n_) : n(n_), c(std::size_t(n_) * n_) {}
  Complex& at(int k1, int k2) { return c[std::size_t(k1 + n / 2) * n + (k2 + n / 2)]; }
  Complex at(int k1, int k2) const { return c[std::size_t(k1 + n / 2) * n + (k2 + n / 2)]; }

  template <typename F>
  void each(F&& f) const {
    for (int k1 = -n / 2; k1 < n / 2; ++k1)
      for (int k2 = -n / 2; k2 < n / 2; ++k2) f(k1, k2);
  }
};

using Grid2 = std::vector<double>;  // x-values, row-major over (i1, i2)

Ref dft(const Grid2& f, int n) {
  Ref r(n);
  r.each([&](int k1, int k2) {
    Complex s{};
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const double ph = -kTwoPi * (double(k1) * a + double(k2) * b) / n;
        s += f[std::size_t(a) * n + b] * Complex(std::cos(ph), std::sin(ph));
      }
    r.at(k1, k2) = s / double(n * n);
  });
  return r;
}

std::vector<Complex> idft_complex(const Ref& r) {
  const int n = r.n;
  std::vector<Complex> out(std::size_t(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Complex s{};
      r.each([&](int k1, int k2) {
        const double ph = kTwoPi * (double(k1) * a + double(k2) * b) / n;
        s += r.at(k1, k2) * Complex(std::cos(ph), std::sin(ph));
      });
      out[std::size_t(a) * n + b] = s;
    }
  return out;
}

Grid2 idft(const Ref& r) {
  const auto z = idft_complex(r);
  Grid2 out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i].real();
  return out;
}

Ref times(const Ref& r, const std::function<Complex(int, int)>& sym) {
  Ref o(r.n);
  r.each([&](int k1, int k2) { o.at(k1, k2) = sym(k1, k2) * r.at(k1, k2); });
  return o;
}

Ref minus(const Ref& a, const Ref& b) {
  Ref o(a.n);
  a.each([&](int k1, int k2) { o.at(k1, k2) = a.at(k1, k2) - b.at(k1, k2); });
  return o;
}

double modk(int k1, int k2) { return std::hypot(double(k1), double(k2)); }

// Reference symbols.
struct Symbols {
  int n;

  bool nyq(int k) const { return k == -n / 2; }

  Complex power(int k1, int k2, double s) const {
    if (k1 == 0 && k2 == 0) return s == 0.0 ? 1.0 : 0.0;
    return std::pow(modk(k1, k2), s);
  }
  Complex riesz(int k1, int k2, double a) const {
    if ((k1 == 0 && k2 == 0) || nyq(k1)) return 0.0;
    return Complex(0.0, double(k1)) / std::pow(modk(k1, k2), a);
  }
  Complex logp(int k1, int k2, double g) const {
    if (g == 0.0) return 1.0;
    if (k1 == 0 && k2 == 0) return 0.0;
    const double r = modk(k1, k2);
    return std::pow(std::log(1.0 + r * r), g);
  }
  Complex law(int k1, int k2, double s, double g) const {
    if (k1 == 0 && k2 == 0) return (s == 0.0 && g == 0.0) ? 1.0 : 0.0;
    return power(k1, k2, s) * logp(k1, k2, g);
  }
  Complex block(int k1, int k2, int j) const {
    const double r = modk(k1, k2);
    if (j == -1) return r <= 1.0 ? 1.0 : 0.0;
    return (r > std::ldexp(1.0, j) && r <= std::ldexp(1.0, j + 1)) ? 1.0 : 0.0;
  }
  Complex lowpass(int k1, int k2, int j) const {
    if (j < 0) return 0.0;
    return modk(k1, k2) <= std::ldexp(1.0, j) ? 1.0 : 0.0;
  }
  Complex keep(int k1, int k2) const { return (3 * std::abs(k1) <= n && 3 * std::abs(k2) <= n) ? 1.0 : 0.0; }
  Complex d(int k1, int k2, int axis) const {
    const int k = axis == 1 ? k1 : k2;
    return nyq(k) ? 0.0 : Complex(0.0, double(k));
  }
};

struct RefVelocity {
  Ref u1, u2;
};

RefVelocity ref_biot_savart(const Ref& w, const Symbols& S, double sigma, double gamma) {
  RefVelocity u{Ref(w.n), Ref(w.n)};
  w.each([&](int k1, int k2) {
    if ((k1 == 0 && k2 == 0) || S.nyq(k1) || S.nyq(k2)) return;
    const double r2 = double(k1) * k1 + double(k2) * k2;
    const Complex m = S.law(k1, k2, sigma, gamma) * w.at(k1, k2) / r2;
    u.u1.at(k1, k2) = Complex(0.0, double(k2)) * m;
    u.u2.at(k1, k2) = Complex(0.0, -double(k1)) * m;
  });
  return u;
}

// dealias(u . grad f) with the mean removed.
Ref ref_advection(const RefVelocity& u, const Ref& f, const Symbols& S) {
  const int n = f.n;
  const Grid2 a1 = idft(u.u1), a2 = idft(u.u2);
  const Grid2 g1 = idft(times(f, [&](int k1, int k2) { return S.d(k1, k2, 1); }));
  const Grid2 g2 = idft(times(f, [&](int k1, int k2) { return S.d(k1, k2, 2); }));
  Grid2 prod(a1.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = a1[i] * g1[i] + a2[i] * g2[i];
  Ref out = times(dft(prod, n), [&](int k1, int k2) { return S.keep(k1, k2); });
  out.at(0, 0) = 0.0;
  return out;
}

// Conversions between the reference layout and the library's storage.
SpectralField to_field(const Ref& r, const Grid& g) {
  SpectralField f(g);
  r.each([&](int k1, int k2) { f.mode(k1, k2) = r.at(k1, k2); });
  return f;
}

double max_diff(const Grid2& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

bool OracleReport::passed() const {
  return !entries.empty() && std::all_of(entries.begin(), entries.end(), [](const OracleEntry& e) { return e.passed; });
}

std::vector<std::string> oracle_check_names() {
  return {"forward",      "inverse",     "dealias",     "derivative",          "fractional_power",
          "modified_riesz", "log_power", "velocity_law", "biot_savart",        "dyadic_block",
          "low_pass",     "riesz_commutator", "block_commutator"};
}

OracleReport oracle_check(const OracleOptions& opts) {
  const int n = opts.n;
  const Grid g(n, n);
  const Symbols S{n};
  auto bump = [&](const char* name, double amount) { return opts.corrupt == name ? amount : 0.0; };

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto random_grid = [&]() {
    Grid2 v(g.size());
    for (auto& x : v) x = normal(rng);
    return v;
  };
  auto band = [&](const Ref& r) { return times(r, [&](int k1, int k2) { return S.keep(k1, k2); }); };

  const Grid2 f = random_grid();
  const Ref F = dft(f, n);
  const PhysField fx(g, f);
  const SpectralField Fi = forward(fx);

  // Band-limited data for products: a field h and a stream function psi.
  const Ref H = band(dft(random_grid(), n));
  const Ref Psi = band(dft(random_grid(), n));
  const RefVelocity U{times(Psi, [&](int k1, int k2) { return -S.d(k1, k2, 2); }),
                      times(Psi, [&](int k1, int k2) { return S.d(k1, k2, 1); })};
  const SpectralField Hi = to_field(H, g);
  const Velocity Ui{to_field(U.u1, g), to_field(U.u2, g)};

  const double alpha = 0.95, s_pow = 0.7, gam = 0.5, sig = 0.3;

  OracleReport rep;
  rep.tolerance = opts.tolerance;
  auto add = [&](const std::string& name, double err) {
    rep.entries.push_back({name, err, err < opts.tolerance});
  };
  auto impl_x = [](const SpectralField& s) { return inverse(s).values; };

  {
    SpectralField got = Fi;
    got *= 1.0 + bump("forward", 1e-9);
    double e = 0.0;
    F.each([&](int k1, int k2) { e = std::max(e, std::abs(got.mode(k1, k2) - F.at(k1, k2))); });
    add("forward", e);
  }
  {
    SpectralField in = to_field(F, g);
    in *= 1.0 + bump("inverse", 1e-9);
    add("inverse", max_diff(idft(F), impl_x(in)));
  }
  {
    const SpectralField got = opts.corrupt == "dealias" ? Fi : dealias(Fi);
    add("dealias", max_diff(idft(band(F)), impl_x(got)));
  }
  {
    double e = 0.0;
    for (int axis : {1, 2}) {
      SpectralField got = derivative(Fi, axis);
      got *= 1.0 + bump("derivative", 1e-9);
      e = std::max(e, max_diff(idft(times(F, [&](int k1, int k2) { return S.d(k1, k2, axis); })), impl_x(got)));
    }
    add("derivative", e);
  }
  {
    double e = 0.0;
    for (double s : {s_pow, -0.6, 0.0}) {
      const auto m = MultiplierSpec::fractional_power(s + bump("fractional_power", 1e-6));
      e = std::max(e, max_diff(idft(times(F, [&](int k1, int k2) { return S.power(k1, k2, s); })),
                               impl_x(apply_multiplier(m, Fi))));
    }
    add("fractional_power", e);
  }
  {
    const auto m = MultiplierSpec::modified_riesz(alpha + bump("modified_riesz", 1e-6));
    add("modified_riesz", max_diff(idft(times(F, [&](int k1, int k2) { return S.riesz(k1, k2, alpha); })),
                                   impl_x(apply_multiplier(m, Fi))));
  }
  {
    const auto m = MultiplierSpec::log_power(gam + bump("log_power", 1e-6));
    add("log_power", max_diff(idft(times(F, [&](int k1, int k2) { return S.logp(k1, k2, gam); })),
                              impl_x(apply_multiplier(m, Fi))));
  }
  {
    const auto m = MultiplierSpec::velocity_law(sig + bump("velocity_law", 1e-6), gam);
    add("velocity_law", max_diff(idft(times(F, [&](int k1, int k2) { return S.law(k1, k2, sig, gam); })),
                                 impl_x(apply_multiplier(m, Fi))));
  }
  {
    const RefVelocity want = ref_biot_savart(F, S, sig, gam);
    ParamSet p;
    p.sigma = sig + bump("biot_savart", 1e-6);
    p.gamma = gam;
    const Velocity got = biot_savart(Fi, p);
    add("biot_savart", std::max(max_diff(idft(want.u1), impl_x(got.u1)), max_diff(idft(want.u2), impl_x(got.u2))));
  }
  {
    double e = 0.0;
    for (int j = -1; j <= max_block(g) + 1; ++j) {
      const int jj = j + (opts.corrupt == "dyadic_block" ? 1 : 0);
      e = std::max(e, max_diff(idft(times(F, [&](int k1, int k2) { return S.block(k1, k2, j); })),
                               impl_x(dyadic_block(Fi, jj))));
    }
    add("dyadic_block", e);
  }
  {
    double e = 0.0;
    for (int j = -1; j <= max_block(g) + 1; ++j) {
      const int jj = j + (opts.corrupt == "low_pass" ? 1 : 0);
      e = std::max(e, max_diff(idft(times(F, [&](int k1, int k2) { return S.lowpass(k1, k2, j); })),
                               impl_x(low_pass(Fi, jj))));
    }
    add("low_pass", e);
  }
  {
    auto R = [&](const Ref& r) { return times(r, [&](int k1, int k2) { return S.riesz(k1, k2, alpha); }); };
    const Ref want = minus(R(ref_advection(U, H, S)), ref_advection(U, R(H), S));
    const auto got = commutator_field(Ui, Hi, CommutatorSpec::riesz(alpha + bump("riesz_commutator", 1e-6)));
    add("riesz_commutator", max_diff(idft(want), impl_x(got)));
  }
  {
    double e = 0.0;
    for (int j = -1; j <= max_block(g); ++j) {
      auto B = [&](const Ref& r) { return times(r, [&](int k1, int k2) { return S.block(k1, k2, j); }); };
      const Ref want = minus(B(ref_advection(U, H, S)), ref_advection(U, B(H), S));
      const int jj = j + (opts.corrupt == "block_commutator" ? 1 : 0);
      const auto got = commutator_field(Ui, Hi, CommutatorSpec::block(jj));
      e = std::max(e, max_diff(idft(want), impl_x(got)));
    }
    add("block_commutator", e);
  }
  return rep;
}

}  // namespace fbq
