#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "fbq/dynamics.hpp"

using namespace fbq;

namespace {

SpectralField single(const Grid& g, int k1, int k2, Complex c) {
  SpectralField f(g);
  f.mode(k1, k2) = c;
  f.mode(-k1, -k2) = std::conj(c);
  return f;
}

SpectralField sin_x1(const Grid& g) { return single(g, 1, 0, Complex(0, -0.5)); }
SpectralField cos_x1(const Grid& g) { return single(g, 1, 0, 0.5); }

SimState zero_state(const Grid& g, ParamSet p = {}) { return {0.0, SpectralField(g), SpectralField(g), p}; }

SimState random_state(const Grid& g, std::uint64_t seed) {
  SimState s = zero_state(g);
  s.omega = random_bandlimited(g, seed, 1.0, 4.0, 1.0);
  s.theta = random_bandlimited(g, seed + 1, 1.0, 4.0, 1.0);
  s.omega.coeffs[0] = 0.25;
  s.theta.coeffs[0] = -0.5;
  return s;
}

}  // namespace

TEST_CASE("zero state has zero tendencies") {
  const Tendency t = tendency(zero_state(Grid(16)));
  CHECK(max_abs(t.domega) == 0.0);
  CHECK(max_abs(t.dtheta) == 0.0);
}

TEST_CASE("tendency examples") {
  const Grid g(16);
  SUBCASE("omega = sin x1 is a steady shear") {
    SimState s = zero_state(g);
    s.omega = sin_x1(g);
    const Tendency t = tendency(s);
    CHECK(max_abs_diff(t.domega, -1.0 * sin_x1(g)) < 1e-15);
    CHECK(max_abs(t.dtheta) == 0.0);
  }
  SUBCASE("theta = sin x1 forces omega") {
    SimState s = zero_state(g);
    s.params.beta = 0.5;
    s.theta = sin_x1(g);
    const Tendency t = tendency(s);
    CHECK(max_abs_diff(t.dtheta, -1.0 * sin_x1(g)) < 1e-15);
    CHECK(max_abs_diff(t.domega, cos_x1(g)) < 1e-15);
  }
}

TEST_CASE("exact integrating factor for pure dissipation") {
  const Grid g(16);
  ParamSet p;
  p.alpha = 0.5;
  SimState s = zero_state(g, p);
  s.omega = single(g, 2, 0, Complex(0.3, -0.4));
  const Dynamics dyn(g, p, {false, false});
  const SimState out = dyn.step(s, {SchemeKind::if_rk4, 0.3});
  const double f = 0.6542510918525355;  // exp(-sqrt(2) * 0.3)
  CHECK(std::abs(out.omega.mode(2, 0) - f * Complex(0.3, -0.4)) < 1e-16);
  CHECK(out.t == 0.3);
}

TEST_CASE("linear decay is exact without advection") {
  const Grid g(32);
  ParamSet p;
  p.beta = 0.4;
  p.kappa = 0.7;
  SimState s = random_state(g, 3);
  const SimState s0 = s;
  const Dynamics dyn(g, p, {false, false});
  s.params = p;
  for (int i = 0; i < 50; ++i) s = dyn.step(s, {SchemeKind::if_rk4, 0.02});
  double err = 0.0;
  for (int i1 = 0; i1 < 32; ++i1)
    for (int i2 = 0; i2 < 32; ++i2) {
      const double r = std::hypot(g.k1(i1), g.k2(i2));
      const double decay = std::exp(-p.kappa * std::pow(r, p.beta) * s.t);
      err = std::max(err, std::abs(s.theta.at(i1, i2) - decay * s0.theta.at(i1, i2)));
    }
  CHECK(err < 1e-12);
}

TEST_CASE("means are conserved") {
  const Grid g(32);
  SimState s = random_state(g, 5);
  const Complex w0 = s.omega.mean(), t0 = s.theta.mean();
  const Dynamics dyn(g, s.params);
  for (int i = 0; i < 20; ++i) s = dyn.step(s, {SchemeKind::if_rk4, 0.01});
  CHECK(std::abs(s.omega.mean() - w0) < 1e-14);
  CHECK(std::abs(s.theta.mean() - t0) < 1e-14);
  CHECK(hermitian_defect(s.omega) == 0.0);
  CHECK(hermitian_defect(s.theta) == 0.0);
}

TEST_CASE("tiny steps leave the state unchanged") {
  const Grid g(32);
  const SimState s = random_state(g, 6);
  const SimState out = step(s, {SchemeKind::if_rk4, 1e-18});
  CHECK(max_abs_diff(out.omega, s.omega) < 1e-16);
  CHECK(max_abs_diff(out.theta, s.theta) < 1e-16);
}

TEST_CASE("free functions match the Dynamics object") {
  const Grid g(32);
  const SimState s = random_state(g, 8);
  const Dynamics dyn(g, s.params);
  CHECK(max_abs_diff(dyn.tendency(s).domega, tendency(s).domega) == 0.0);
  CHECK(max_abs_diff(dyn.step(s, {}).theta, step(s, {}).theta) == 0.0);
}

TEST_CASE("RK4 is fourth order") {
  const Grid g(32);
  const SimState s0 = random_state(g, 9);
  auto run = [&](int n) {
    SimState s = s0;
    const Dynamics dyn(g, s.params);
    for (int i = 0; i < n; ++i) s = dyn.step(s, {SchemeKind::if_rk4, 0.4 / n});
    return s;
  };
  const SimState ref = run(256);
  const double e1 = max_abs_diff(run(8).omega, ref.omega);
  const double e2 = max_abs_diff(run(16).omega, ref.omega);
  CHECK(e1 / e2 > 12.0);
}

TEST_CASE("non-finite output raises BlowUpError") {
  const Grid g(16);
  SimState s = zero_state(g);
  s.omega.mode(1, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(step(s, {}), BlowUpError);
  CHECK_THROWS_AS(step(zero_state(g), {SchemeKind::if_rk4, 0.0}), Error);
  CHECK_THROWS_AS(step(zero_state(g), {SchemeKind::if_rk4, -1.0}), Error);
}

TEST_CASE("CFL step") {
  SimState s = zero_state(Grid(128));
  s.omega = sin_x1(s.omega.grid);  // u = (0, -cos x1), |u|_inf = 1
  CHECK(cfl_dt(s, 0.5) == doctest::Approx(0.02454369260617026).epsilon(1e-15));
  SimState fine = zero_state(Grid(256));
  fine.omega = sin_x1(fine.omega.grid);
  CHECK(cfl_dt(fine, 0.5) == doctest::Approx(0.5 * cfl_dt(s, 0.5)).epsilon(1e-15));
  const SimState z = zero_state(Grid(128));
  CHECK(cfl_dt(z, 0.5) == doctest::Approx(0.5 * 2 * std::numbers::pi / 128 / kVelocityFloor).epsilon(1e-15));
  CHECK_THROWS_AS(cfl_dt(z, 0.0), Error);
}

TEST_CASE("random band-limited data") {
  const Grid g(64);
  const SpectralField f = random_bandlimited(g, 42, 1.0, 4.0, 2.0);
  CHECK(f.mean() == Complex{});
  CHECK(std::sqrt(spectral_l2_squared(f)) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(hermitian_defect(f) == 0.0);
  CHECK(random_bandlimited(g, 42, 1.0, 4.0, 2.0).coeffs == f.coeffs);
  CHECK(max_abs_diff(random_bandlimited(g, 43, 1.0, 4.0, 2.0), f) > 1e-3);
  // same continuous field on a finer grid
  const SpectralField fine = random_bandlimited(Grid(128), 42, 1.0, 4.0, 2.0);
  CHECK(max_abs_diff(resample(fine, g), f) < 1e-14);
}
