#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fbq/regions.hpp"
#include "fbq/spectral.hpp"

using namespace fbq;

namespace {

const Constraint& named(const RegionVerdict& v, const std::string& name) {
  auto it = std::find_if(v.constraints.begin(), v.constraints.end(), [&](const Constraint& c) { return c.name == name; });
  REQUIRE(it != v.constraints.end());
  return *it;
}

}  // namespace

TEST_CASE("g(alpha) values") {
  CHECK(std::abs(g_alpha(0.95) - 0.1) < 1e-15);
  CHECK(std::abs(g_alpha(0.975) - 0.05) < 1e-15);
  CHECK(g_alpha(0.999) < 0.0021);
  CHECK_THROWS_AS(g_alpha(1.0), Error);
  CHECK_THROWS_AS(g_alpha(0.0), Error);
}

TEST_CASE("g(alpha) is 4-Lipschitz on [0.9, 0.999]") {
  const double h = 1e-4;
  for (double a = 0.9; a + h < 0.999; a += h) CHECK(std::abs(g_alpha(a + h) - g_alpha(a)) <= 4 * h + 1e-15);
}

TEST_CASE("main window examples") {
  const RegionVerdict ok = check_admissible(0.95, 0.08, std::nullopt, TheoremId::main);
  CHECK(ok.admissible);
  for (const auto& c : ok.constraints) CHECK(c.satisfied);

  const RegionVerdict hi = check_admissible(0.95, 0.12, std::nullopt, TheoremId::main);
  CHECK_FALSE(hi.admissible);
  CHECK(hi.binding().name == "β < g(α)");
  CHECK(hi.binding().margin == doctest::Approx(-0.02).epsilon(1e-12));

  const RegionVerdict lo = check_admissible(0.9, 0.08, std::nullopt, TheoremId::main);
  CHECK_FALSE(lo.admissible);
  CHECK(lo.binding().name == "α ≥ 19/20");
  CHECK(lo.binding().margin == doctest::Approx(-0.05).epsilon(1e-12));
}

TEST_CASE("strict and non-strict endpoints") {
  // alpha = 19/20 is allowed, beta = 1 - alpha is not.
  CHECK(named(check_admissible(0.95, 0.08, std::nullopt, TheoremId::main), "α ≥ 19/20").satisfied);
  CHECK_FALSE(named(check_admissible(0.96, 0.04, std::nullopt, TheoremId::main), "β > 1−α").satisfied);
  // G_L2 closes the upper beta end.
  const RegionVerdict l2 = check_admissible(0.875, 0.25, std::nullopt, TheoremId::G_L2);
  CHECK(named(l2, "β ≤ 2−2α").satisfied);
  CHECK(named(l2, "β ≤ 2−2α").margin == 0.0);
  CHECK(l2.admissible);
}

TEST_CASE("G_Lq window") {
  const double q = kDefaultQ;
  const RegionVerdict v = check_admissible(0.96, 0.06, q, TheoremId::G_Lq);
  CHECK(v.admissible);
  CHECK_FALSE(check_admissible(0.96, 0.06, 2.5, TheoremId::G_Lq).admissible);
  CHECK_FALSE(check_admissible(0.96, 0.06, 1.5, TheoremId::G_Lq).admissible);
  // default q is used when none is given
  CHECK(check_admissible(0.96, 0.06, std::nullopt, TheoremId::G_Lq).admissible);
  // nonpositive denominator makes the last branch vacuous
  const RegionVerdict w = check_admissible(0.99, 0.015, 1.9, TheoremId::G_Lq);
  CHECK(named(w, "β < (1−α)/((4/α)(1−1/q)−2)").satisfied);
  CHECK(named(w, "β < (1−α)/((4/α)(1−1/q)−2)").margin == kInf);
  CHECK_FALSE(named(w, "q ≥ 2").satisfied);
}

TEST_CASE("G_Besov window is empty at alpha = 0.95") {
  const RegionVerdict v = check_admissible(0.95, 0.08, std::nullopt, TheoremId::G_Besov);
  CHECK_FALSE(v.admissible);
  CHECK(check_admissible(0.99, 0.015, std::nullopt, TheoremId::G_Besov).admissible);
}

TEST_CASE("nesting sweep and emptiness threshold") {
  const NestingReport r = nesting_sweep(200, kDefaultQ);
  CHECK(r.points == 40000);
  CHECK(r.main_admissible > 0);
  CHECK(r.violations == 0);
  const double a = nonempty_threshold();
  CHECK(a < 0.95);
  CHECK(g_alpha(a + 1e-9) > 1 - (a + 1e-9));
  CHECK(g_alpha(a - 1e-9) <= 1 - (a - 1e-9));
  for (double x = 0.95; x < 1.0; x += 0.001) CHECK(g_alpha(x) > 1 - x);
}

TEST_CASE("theorem names round trip") {
  for (auto id : {TheoremId::main, TheoremId::G_L2, TheoremId::G_Lq, TheoremId::G_Besov})
    CHECK(parse_theorem(theorem_name(id)) == id);
  CHECK_FALSE(parse_theorem("nope").has_value());
}
