#pragma once

// Cross-check of the FFT-backed operators against brute-force O(N^4) DFT
// compositions with independently written symbols, on an 8x8 grid.

#include <cstdint>
#include <string>
#include <vector>

namespace fbq {

struct OracleEntry {
  std::string name;
  double max_error = 0.0;
  bool passed = false;
};

struct OracleReport {
  double tolerance = 1e-12;
  std::vector<OracleEntry> entries;

  bool passed() const;
};

struct OracleOptions {
  std::uint64_t seed = 7;
  double tolerance = 1e-12;
  int n = 8;
  /// Name of a check whose implementation side is run with a perturbed
  /// parameter (test hook). Empty: no corruption.
  std::string corrupt;
};

/// Names of all checks, in report order.
std::vector<std::string> oracle_check_names();

OracleReport oracle_check(const OracleOptions& opts = {});

}  // namespace fbq
