#pragma once

// Binary snapshot of a SimState, all fields little-endian:
//   "BQS1" | u32 version | u32 n1 | u32 n2 | u32 flags (0) | f64 t
//   f64 alpha, beta, sigma, gamma, nu, kappa
//   omega coefficients, then theta coefficients, row-major (re, im) f64 pairs
// Size: 28 + 48 + 2 * n1 * n2 * 16 bytes.

#include <cstdint>
#include <string>
#include <vector>

#include "fbq/dynamics.hpp"

namespace fbq {

inline constexpr std::uint32_t kSnapshotVersion = 1;
inline constexpr std::size_t kSnapshotHeaderBytes = 28;
inline constexpr std::size_t kSnapshotParamBytes = 48;

std::size_t snapshot_size(const Grid& g);

std::vector<unsigned char> encode_snapshot(const SimState& s);
SimState decode_snapshot(const std::vector<unsigned char>& bytes);

void save_snapshot(const SimState& s, const std::string& path);
SimState load_snapshot(const std::string& path);

}  // namespace fbq
