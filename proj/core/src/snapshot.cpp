#include "fbq/snapshot.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

namespace fbq {

namespace {

template <typename T>
void put(std::vector<unsigned char>& out, T v) {
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  out.insert(out.end(), b, b + sizeof(T));
}

template <typename T>
T get(const std::vector<unsigned char>& in, std::size_t& pos) {
  unsigned char b[sizeof(T)];
  std::memcpy(b, in.data() + pos, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  pos += sizeof(T);
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

constexpr char kMagic[4] = {'B', 'Q', 'S', '1'};

}  // namespace

std::size_t snapshot_size(const Grid& g) { return kSnapshotHeaderBytes + kSnapshotParamBytes + 2 * g.size() * 16; }

std::vector<unsigned char> encode_snapshot(const SimState& s) {
  require_same_grid(s.omega.grid, s.theta.grid, "snapshot");
  const Grid& g = s.omega.grid;
  std::vector<unsigned char> out;
  out.reserve(snapshot_size(g));
  out.insert(out.end(), kMagic, kMagic + 4);
  put<std::uint32_t>(out, kSnapshotVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n1()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n2()));
  put<std::uint32_t>(out, 0);
  put<double>(out, s.t);
  for (double p : {s.params.alpha, s.params.beta, s.params.sigma, s.params.gamma, s.params.nu, s.params.kappa})
    put<double>(out, p);
  for (const SpectralField* f : {&s.omega, &s.theta})
    for (const Complex& c : f->coeffs) {
      put<double>(out, c.real());
      put<double>(out, c.imag());
    }
  return out;
}

SimState decode_snapshot(const std::vector<unsigned char>& in) {
  if (in.size() < kSnapshotHeaderBytes + kSnapshotParamBytes)
    throw Error("snapshot: truncated header (" + std::to_string(in.size()) + " bytes)");
  if (std::memcmp(in.data(), kMagic, 4) != 0) throw Error("snapshot: bad magic");
  std::size_t pos = 4;
  const auto version = get<std::uint32_t>(in, pos);
  if (version != kSnapshotVersion) throw Error("snapshot: unsupported version " + std::to_string(version));
  const auto n1 = get<std::uint32_t>(in, pos);
  const auto n2 = get<std::uint32_t>(in, pos);
  const auto flags = get<std::uint32_t>(in, pos);
  if (flags != 0) throw Error("snapshot: unsupported flags " + std::to_string(flags));
  if (n1 > (1u << 16) || n2 > (1u << 16)) throw Error("snapshot: grid too large");
  const Grid g(static_cast<int>(n1), static_cast<int>(n2));
  if (in.size() != snapshot_size(g))
    throw Error("snapshot: length mismatch: expected " + std::to_string(snapshot_size(g)) + " bytes, found " +
                std::to_string(in.size()));

  SimState s;
  s.t = get<double>(in, pos);
  s.params.alpha = get<double>(in, pos);
  s.params.beta = get<double>(in, pos);
  s.params.sigma = get<double>(in, pos);
  s.params.gamma = get<double>(in, pos);
  s.params.nu = get<double>(in, pos);
  s.params.kappa = get<double>(in, pos);
  s.omega = SpectralField(g);
  s.theta = SpectralField(g);
  for (SpectralField* f : {&s.omega, &s.theta})
    for (Complex& c : f->coeffs) {
      const double re = get<double>(in, pos);
      const double im = get<double>(in, pos);
      c = Complex(re, im);
    }
  return s;
}

void save_snapshot(const SimState& s, const std::string& path) {
  const auto bytes = encode_snapshot(s);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("snapshot: cannot open " + path + " for writing");
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw Error("snapshot: write failed for " + path);
}

SimState load_snapshot(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("snapshot: cannot open " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return decode_snapshot(bytes);
}

}  // namespace fbq
