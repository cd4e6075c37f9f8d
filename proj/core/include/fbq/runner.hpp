#pragma once

// Drives a configured run: initial data, adaptive stepping that lands exactly
// on diagnostic times, records, snapshots and the blow-up guard.

#include <functional>
#include <string>
#include <vector>

#include "fbq/config.hpp"
#include "fbq/diagnostics.hpp"

namespace fbq {

/// Seed offsets for the fields drawn from one configured seed.
inline constexpr std::uint64_t kThetaSeedOffset = 1000003;
inline constexpr std::uint64_t kTwinThetaSeedOffset = 2000006;
inline constexpr std::uint64_t kTwinOmegaSeedOffset = 3000009;

SimState initial_state(const RunConfig& c);

DynamicsOptions dynamics_options(const RunConfig& c);
DiagnosticsSettings diagnostics_settings(const RunConfig& c);

struct RunOptions {
  /// Write diagnostics.csv, plot data, snapshots and the resolved config.
  bool write_outputs = true;
  /// Called after every accepted step.
  std::function<void(const SimState& prev, const SimState& next)> on_step;
};

struct RunResult {
  std::vector<DiagnosticsRecord> records;
  std::vector<std::string> snapshots;
  std::string output_dir;
  SimState final_state;
  long steps = 0;
  bool blew_up = false;
  std::string blowup_report;
};

RunResult run(const RunConfig& c, const RunOptions& opts = {});

/// Twin run from the configured data and a copy perturbed by delta * (eta, zeta),
/// eta and zeta unit-L^2 random fields drawn from the configured seed.
std::vector<TwinSample> twin_stability(const RunConfig& c, double delta, double C = 1.0);

}  // namespace fbq
