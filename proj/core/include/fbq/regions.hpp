#pragma once

// Parameter windows of the global regularity result and of the estimates it
// rests on, evaluated constraint by constraint with signed margins.

#include <optional>
#include <string>
#include <vector>

namespace fbq {

/// min{2 - 2a, (8/3)a - 2, 5a(1 - a)/(11 - 10a)} for a in (0, 1).
double g_alpha(double alpha);

enum class TheoremId { main, G_L2, G_Lq, G_Besov };

const char* theorem_name(TheoremId id);
std::optional<TheoremId> parse_theorem(const std::string& name);

struct Constraint {
  std::string name;
  bool satisfied = false;
  /// Signed distance to the boundary, positive on the admissible side. A strict
  /// constraint needs margin > 0, a non-strict one margin >= 0.
  double margin = 0.0;
  bool strict = true;
};

struct RegionVerdict {
  TheoremId theorem = TheoremId::main;
  bool admissible = false;
  std::vector<Constraint> constraints;

  /// Constraint with the most negative margin (the first one on ties).
  const Constraint& binding() const;
};

/// Default Lebesgue exponent for the q-dependent windows.
inline constexpr double kDefaultQ = 20.0 / 9.0 - 0.01;

RegionVerdict check_admissible(double alpha, double beta, std::optional<double> q, TheoremId theorem);

struct NestingReport {
  int points = 0;
  int main_admissible = 0;
  int violations = 0;
};

/// Sweeps the cell centres ((i + 1/2)/n, (j + 1/2)/n) and counts main-admissible
/// points that fail the G_Lq (at q) or G_L2 window.
NestingReport nesting_sweep(int n = 200, double q = kDefaultQ);

/// Boundary alpha above which (1 - alpha, g(alpha)) is nonempty, by bisection
/// on g(alpha) - (1 - alpha) over [lo, 0.999].
double nonempty_threshold(double lo = 0.5, double tol = 1e-14);

}  // namespace fbq
