#include "fbq/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fbq/spectral.hpp"

namespace fbq {

namespace {

Constraint strict(std::string name, double margin) { return {std::move(name), margin > 0.0, margin, true}; }
Constraint loose(std::string name, double margin) { return {std::move(name), margin >= 0.0, margin, false}; }

void main_window(std::vector<Constraint>& c, double alpha, double beta) {
  c.push_back(loose("α ≥ 19/20", alpha - 19.0 / 20.0));
  c.push_back(strict("α < 1", 1.0 - alpha));
  c.push_back(strict("β > 1−α", beta - (1.0 - alpha)));
  const double g = alpha > 0.0 && alpha < 1.0 ? g_alpha(alpha) : -kInf;
  c.push_back(strict("β < g(α)", g - beta));
}

void q_range(std::vector<Constraint>& c, double q) {
  c.push_back(loose("q ≥ 2", q - 2.0));
  c.push_back(strict("q < 20/9", 20.0 / 9.0 - q));
}

}  // namespace

double g_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error("g_alpha: alpha must lie in (0,1)");
  const double b1 = 2.0 - 2.0 * alpha;
  const double b2 = 8.0 / 3.0 * alpha - 2.0;
  const double b3 = 5.0 * alpha * (1.0 - alpha) / (11.0 - 10.0 * alpha);
  return std::min({b1, b2, b3});
}

const char* theorem_name(TheoremId id) {
  switch (id) {
    case TheoremId::main: return "main";
    case TheoremId::G_L2: return "G_L2";
    case TheoremId::G_Lq: return "G_Lq";
    case TheoremId::G_Besov: return "G_Besov";
  }
  return "?";
}

std::optional<TheoremId> parse_theorem(const std::string& name) {
  for (auto id : {TheoremId::main, TheoremId::G_L2, TheoremId::G_Lq, TheoremId::G_Besov})
    if (name == theorem_name(id)) return id;
  return std::nullopt;
}

const Constraint& RegionVerdict::binding() const {
  if (constraints.empty()) throw Error("region verdict has no constraints");
  return *std::min_element(constraints.begin(), constraints.end(),
                           [](const Constraint& a, const Constraint& b) { return a.margin < b.margin; });
}

RegionVerdict check_admissible(double alpha, double beta, std::optional<double> q_opt, TheoremId theorem) {
  RegionVerdict v;
  v.theorem = theorem;
  auto& c = v.constraints;
  const double q = q_opt.value_or(kDefaultQ);

  switch (theorem) {
    case TheoremId::main:
      main_window(c, alpha, beta);
      break;
    case TheoremId::G_L2:
      c.push_back(strict("α > 3/4", alpha - 0.75));
      c.push_back(strict("α < 1", 1.0 - alpha));
      c.push_back(strict("β > 1−α", beta - (1.0 - alpha)));
      c.push_back(loose("β ≤ 3α−2", 3.0 * alpha - 2.0 - beta));
      c.push_back(loose("β ≤ 2−2α", 2.0 - 2.0 * alpha - beta));
      break;
    case TheoremId::G_Lq: {
      q_range(c, q);
      c.push_back(strict("α > (9q−12)/(8q−8)", alpha - (9.0 * q - 12.0) / (8.0 * q - 8.0)));
      c.push_back(strict("α < 1", 1.0 - alpha));
      c.push_back(strict("β > 1−α", beta - (1.0 - alpha)));
      c.push_back(strict("β < 2−2α", 2.0 - 2.0 * alpha - beta));
      c.push_back(strict("β < ((5q−4)/(3q−4))α−2", (5.0 * q - 4.0) / (3.0 * q - 4.0) * alpha - 2.0 - beta));
      const double den = alpha > 0.0 ? (4.0 / alpha) * (1.0 - 1.0 / q) - 2.0 : kInf;
      const double cap = den > 0.0 ? (1.0 - alpha) / den : kInf;
      c.push_back(strict("β < (1−α)/((4/α)(1−1/q)−2)", cap - beta));
      break;
    }
    case TheoremId::G_Besov:
      main_window(c, alpha, beta);
      q_range(c, q);
      c.push_back(strict("α > (2+q)/(2q)", alpha - (2.0 + q) / (2.0 * q)));
      c.push_back(strict("9/10 < 2α−1", 2.0 * alpha - 1.0 - 0.9));
      break;
  }
  v.admissible = std::all_of(c.begin(), c.end(), [](const Constraint& x) { return x.satisfied; });
  return v;
}

NestingReport nesting_sweep(int n, double q) {
  if (n < 1) throw Error("nesting_sweep: n must be positive");
  NestingReport r;
  for (int i = 0; i < n; ++i) {
    const double alpha = (i + 0.5) / n;
    for (int j = 0; j < n; ++j) {
      const double beta = (j + 0.5) / n;
      ++r.points;
      if (!check_admissible(alpha, beta, q, TheoremId::main).admissible) continue;
      ++r.main_admissible;
      if (!check_admissible(alpha, beta, q, TheoremId::G_Lq).admissible ||
          !check_admissible(alpha, beta, q, TheoremId::G_L2).admissible)
        ++r.violations;
    }
  }
  return r;
}

double nonempty_threshold(double lo, double tol) {
  auto h = [](double a) { return g_alpha(a) - (1.0 - a); };
  double hi = 0.999;
  if (!(lo > 0.0 && lo < hi)) throw Error("nonempty_threshold: lo must lie in (0, 0.999)");
  if (h(lo) > 0.0 || h(hi) <= 0.0) throw Error("nonempty_threshold: no sign change on [lo, 0.999]");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) > 0.0 ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace fbq
