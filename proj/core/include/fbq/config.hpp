#pragma once

// Run configuration: line-oriented `key = value` text, `#` to end of line is a
// comment. Unknown and repeated keys are rejected.

#include <cstdint>
#include <string>
#include <vector>

#include "fbq/dynamics.hpp"
#include "fbq/multipliers.hpp"
#include "fbq/regions.hpp"

namespace fbq {

enum class InitKind { random_bandlimited, explicit_modes, file };

/// One Fourier coefficient of the initial data; its mirror -k is set to the conjugate.
struct ModeSpec {
  bool omega = true;
  int k1 = 0;
  int k2 = 0;
  Complex value{};
};

struct InitSpec {
  InitKind kind = InitKind::random_bandlimited;
  std::uint64_t seed = 1;
  double slope = 1.0;
  double k_cutoff = 4.0;
  /// L^2 norms of the random omega_0 and theta_0.
  double omega_amplitude = 1.0;
  double theta_amplitude = 1.0;
  std::vector<ModeSpec> modes;
  std::string file;
};

struct RunConfig {
  int n1 = 256;
  int n2 = 256;
  ParamSet params{};
  double t_end = 1.0;
  double max_dt = 1e-2;
  /// Positive: constant step size instead of the CFL rule.
  double fixed_dt = 0.0;
  double cfl_safety = 0.5;
  double diag_interval = 0.01;
  /// Snapshots go out at the first diagnostic time at or past each multiple.
  double snap_interval = 1.0;
  InitSpec init{};
  SchemeKind scheme = SchemeKind::if_rk4;
  bool advection = true;
  double besov_eps = 0.01;
  double lq = kDefaultQ;
  double lp_omega = 4.0;
  bool experimental_beta = false;
  bool allow_inviscid = false;
  double guard_factor = 1e6;
  /// Empty: BQS_OUTPUT_DIR, then "fbq_out".
  std::string output_dir;
  bool write_snapshots = true;

  Grid grid() const { return Grid(n1, n2); }
  /// Throws fbq::Error describing the first violated requirement.
  void validate() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical text form; parse_config(to_text(c)) reproduces c.
std::string to_text(const RunConfig& c);

/// Output directory after the environment fallback.
std::string resolve_output_dir(const RunConfig& c);

}  // namespace fbq
