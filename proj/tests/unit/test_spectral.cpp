#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fbq/spectral.hpp"
#include "reference_dft.hpp"

using namespace fbq;

namespace {

PhysField sample(const Grid& g, auto fn) {
  PhysField f(g);
  const double h1 = 2.0 * std::numbers::pi / g.n1(), h2 = 2.0 * std::numbers::pi / g.n2();
  for (int i = 0; i < g.n1(); ++i)
    for (int j = 0; j < g.n2(); ++j) f(i, j) = fn(i * h1, j * h2);
  return f;
}

PhysField random_phys(const Grid& g, unsigned seed) {
  return PhysField(g, ref::random_values(g.n1(), g.n2(), seed));
}

}  // namespace

TEST_CASE("grid rejects non powers of two") {
  CHECK_THROWS_AS(Grid(12, 8), Error);
  CHECK_THROWS_AS(Grid(4, 4), Error);
  CHECK_NOTHROW(Grid(16, 8));
}

TEST_CASE("constant field has only the mean mode") {
  const Grid g(8);
  const SpectralField c = forward(sample(g, [](double, double) { return 2.5; }));
  CHECK(c.mean() == Complex(2.5, 0.0));
  for (std::size_t i = 1; i < c.coeffs.size(); ++i) CHECK(std::abs(c.coeffs[i]) < 1e-15);
}

TEST_CASE("cos 3x1 has coefficients 1/2 at k = (+-3, 0)") {
  const Grid g(8);
  const SpectralField c = forward(sample(g, [](double x, double) { return std::cos(3 * x); }));
  CHECK(std::abs(c.mode(3, 0) - 0.5) < 1e-15);
  CHECK(std::abs(c.mode(-3, 0) - 0.5) < 1e-15);
  double others = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      if (!((i == 3 || i == 5) && j == 0)) others = std::max(others, std::abs(c.at(i, j)));
  CHECK(others < 1e-15);
}

TEST_CASE("forward and inverse agree with the brute-force DFT") {
  for (const auto& [n1, n2] : {std::pair{8, 8}, std::pair{8, 16}, std::pair{16, 8}}) {
    const Grid g(n1, n2);
    const PhysField f = random_phys(g, 11u + n1 + 3u * n2);
    const auto expect = ref::dft(f.values, n1, n2);
    const SpectralField c = forward(f);
    double err = 0.0;
    for (std::size_t i = 0; i < expect.size(); ++i) err = std::max(err, std::abs(c.coeffs[i] - expect[i]));
    CHECK(err < 1e-14);

    const auto back = ref::idft(c.coeffs, n1, n2);
    const PhysField x = inverse(c);
    double err2 = 0.0;
    for (std::size_t i = 0; i < back.size(); ++i) err2 = std::max(err2, std::abs(x.values[i] - back[i].real()));
    CHECK(err2 < 1e-13);
    CHECK(max_abs_diff(x, f) < 1e-13);
  }
}

TEST_CASE("forward output is exactly Hermitian") {
  const SpectralField c = forward(random_phys(Grid(16), 5));
  CHECK(hermitian_defect(c) == 0.0);
}

TEST_CASE("paired transforms match single transforms") {
  const Grid g(16, 32);
  const PhysField a = random_phys(g, 1), b = random_phys(g, 2);
  auto [fa, fb] = forward_pair(a, b);
  CHECK(max_abs_diff(fa, forward(a)) < 1e-15);
  CHECK(max_abs_diff(fb, forward(b)) < 1e-15);
  auto [xa, xb] = inverse_pair(fa, fb);
  CHECK(max_abs_diff(xa, a) < 1e-14);
  CHECK(max_abs_diff(xb, b) < 1e-14);
}

TEST_CASE("round trip on random fields") {
  for (int n : {8, 32, 128}) {
    const Grid g(n);
    const PhysField f = random_phys(g, n);
    CHECK(max_abs_diff(inverse(forward(f)), f) < 1e-12);
  }
}

TEST_CASE("dealias keeps 3|k| <= n") {
  const Grid g(8);
  for (int k = -4; k < 4; ++k) {
    CHECK(dealias_keeps(g, k, 0) == (std::abs(k) <= 2));
    CHECK(dealias_keeps(g, 0, k) == (std::abs(k) <= 2));
  }

  SUBCASE("band-limited field unchanged") {
    SpectralField f(g);
    f.mode(2, -1) = Complex(0.3, 0.2);
    f.mode(-2, 1) = Complex(0.3, -0.2);
    f.mode(1, 2) = Complex(-0.7, 0.1);
    f.mode(-1, -2) = Complex(-0.7, -0.1);
    CHECK(dealias(f).coeffs == f.coeffs);
  }
  SUBCASE("e^{i 3 x1} removed") {
    SpectralField f(g);
    f.mode(3, 0) = 1.0;
    CHECK(max_abs(dealias(f)) == 0.0);
  }
  SUBCASE("projection preserving Hermitian symmetry") {
    const SpectralField f = forward(random_phys(Grid(32, 16), 9));
    const SpectralField once = dealias(f);
    CHECK(dealias(once).coeffs == once.coeffs);
    CHECK(hermitian_defect(once) == 0.0);
  }
}

TEST_CASE("lp norms use the normalized measure") {
  const Grid g(16);
  const PhysField c = sample(g, [](double x, double) { return std::cos(x); });
  CHECK(lp_norm(c, 2.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(lp_norm(c, kInf) == 1.0);
  CHECK(lp_norm(c, 1.0) == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-2));
  CHECK_THROWS_AS(lp_norm(c, 0.5), Error);
}

TEST_CASE("Parseval against the brute-force DFT") {
  const Grid g(8);
  const PhysField f = random_phys(g, 21);
  double s = 0.0;
  for (const auto& c : ref::dft(f.values, 8, 8)) s += std::norm(c);
  const double l2 = lp_norm(f, 2.0);
  CHECK(std::abs(l2 * l2 - s) < 1e-12 * l2 * l2);
  CHECK(std::abs(spectral_l2_squared(forward(f)) - s) < 1e-12 * s);
}

TEST_CASE("resample copies shared modes") {
  const Grid fine(32), coarse(16);
  const SpectralField f = dealias(forward(random_phys(fine, 4)));
  const SpectralField c = resample(f, coarse);
  for (int k1 = -5; k1 <= 5; ++k1)
    for (int k2 = -5; k2 <= 5; ++k2) CHECK(c.mode(k1, k2) == f.mode(k1, k2));
  const SpectralField up = resample(c, fine);
  CHECK(up.mode(12, 0) == Complex{});
  CHECK(up.mode(3, -4) == f.mode(3, -4));
}

TEST_CASE("size mismatches are rejected") {
  CHECK_THROWS_AS(PhysField(Grid(8), std::vector<double>(10)), Error);
  CHECK_THROWS_AS(SpectralField(Grid(8), std::vector<Complex>(63)), Error);
  SpectralField a{Grid(8)};
  CHECK_THROWS_AS(a += SpectralField(Grid(16)), Error);
}
