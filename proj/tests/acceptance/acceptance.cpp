// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Optional arguments select criteria by number.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "fbq/besov.hpp"
#include "fbq/oracle.hpp"
#include "fbq/outputs.hpp"
#include "fbq/regions.hpp"
#include "fbq/runner.hpp"
#include "fbq/snapshot.hpp"

using namespace fbq;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

fs::path scratch(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("fbq_accept_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// alpha = 0.95, beta = 0.08 on 256^2 with unit-L^2 random data.
RunConfig standard_run() { return RunConfig{}; }

SpectralField white_noise(const Grid& g, std::uint64_t seed) {
  std::vector<double> v(g.size());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  for (auto& x : v) x = n(rng);
  return forward(PhysField(g, std::move(v)));
}

Outcome operator_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const OracleReport r = oracle_check();
  const double dt = seconds_since(t0);
  double worst = 0.0;
  for (const auto& e : r.entries) worst = std::max(worst, e.max_error);
  return {r.passed() && r.entries.size() >= 8 && dt < 5.0,
          fmt("%zu checks on 8x8, max abs error %.2e (< 1e-12), %.2f s (< 5 s)", r.entries.size(), worst, dt)};
}

Outcome littlewood_paley() {
  const auto t0 = std::chrono::steady_clock::now();
  const Grid g(128);
  const int jmax = max_block(g);
  double residual = 0.0;
  long nonzero_products = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const SpectralField f = white_noise(g, 1000 + trial);
    std::vector<SpectralField> blocks;
    SpectralField sum(g);
    for (int j = -1; j <= jmax; ++j) {
      blocks.push_back(dyadic_block(f, j));
      sum += blocks.back();
    }
    residual = std::max(residual, max_abs_diff(sum, f));
    residual = std::max(residual, max_abs_diff(inverse(sum), inverse(f)));
    for (int j = -1; j <= jmax; ++j)
      for (int k = -1; k <= jmax; ++k)
        if (j != k) nonzero_products += max_abs(dyadic_block(blocks[j + 1], k)) != 0.0;
  }
  const double dt = seconds_since(t0);
  return {residual < 1e-13 && nonzero_products == 0 && dt < 30.0,
          fmt("100 fields on 128^2: partition residual %.2e (< 1e-13), %ld nonzero cross products, %.2f s (< 30 s)",
              residual, nonzero_products, dt)};
}

Outcome bernstein() {
  const Grid g(128);
  int checks = 0, violations = 0;
  double tightest = kInf;
  for (int trial = 0; trial < 10; ++trial) {
    const SpectralField noise = white_noise(g, 2000 + trial);
    for (int j = 1; j <= 5; ++j) {
      const SpectralField f = dyadic_block(noise, j);
      const double n = std::sqrt(spectral_l2_squared(f));
      for (double s : {0.25, 0.475}) {
        const double m = std::sqrt(spectral_l2_squared(apply_multiplier(MultiplierSpec::fractional_power(2 * s), f)));
        const double lo = std::exp2(2 * s * j) * n, hi = std::exp2(2 * s * (j + 1)) * n;
        checks += 2;
        violations += !(lo <= m) + !(m <= hi);
        tightest = std::min({tightest, m / lo - 1.0, hi / m - 1.0});
      }
    }
  }
  return {violations == 0, fmt("%d two-sided bounds, j = 1..5, s in {0.25, 0.475}: %d violations, "
                               "smallest relative slack %.3e", checks, violations, tightest)};
}

Outcome maximum_principle() {
  const auto t0 = std::chrono::steady_clock::now();
  RunConfig c = standard_run();
  c.t_end = 2.0;
  RunOptions o;
  o.write_outputs = false;
  double worst2 = 0.0, worst4 = 0.0, worstinf = 0.0;
  long steps = 0;
  o.on_step = [&](const SimState& prev, const SimState& next) {
    auto [a, b] = inverse_pair(prev.theta, next.theta);
    worst2 = std::max(worst2, lp_norm(b, 2.0) / lp_norm(a, 2.0) - 1.0);
    worst4 = std::max(worst4, lp_norm(b, 4.0) / lp_norm(a, 4.0) - 1.0);
    worstinf = std::max(worstinf, lp_norm(b, kInf) / lp_norm(a, kInf) - 1.0);
    ++steps;
  };
  const RunResult r = run(c, o);
  const bool ok = !r.blew_up && worst2 <= 1e-8 && worst4 <= 1e-8 && worstinf <= 1e-4;
  return {ok, fmt("256^2, t = 0..2, %ld steps: max per-step growth L2 %.2e, L4 %.2e (<= 1e-8), Linf %.2e (<= 1e-4), "
                  "%.1f s", steps, worst2, worst4, worstinf, seconds_since(t0))};
}

Outcome euler_limit() {
  const auto t0 = std::chrono::steady_clock::now();
  const Grid g(256);
  ParamSet p;
  p.nu = 0.0;
  p.kappa = 0.0;
  const Dynamics dyn(g, p, {true, true});
  SimState s{0.0, random_bandlimited(g, 1, 1.0, 4.0, 1.0), SpectralField(g), p};
  const double w2 = lp_norm(inverse(s.omega), 2.0), w4 = lp_norm(inverse(s.omega), 4.0);
  double drift2 = 0.0, drift4 = 0.0;
  for (int i = 0; i < 1000; ++i) {
    s = dyn.step(s, {SchemeKind::if_rk4, 1e-3});
    const PhysField w = inverse(s.omega);
    drift2 = std::max(drift2, std::abs(lp_norm(w, 2.0) / w2 - 1.0));
    drift4 = std::max(drift4, std::abs(lp_norm(w, 4.0) / w4 - 1.0));
  }
  return {drift2 < 1e-6, fmt("nu = kappa = 0, theta = 0, 256^2, dt = 1e-3, t = 0..%.3g: max |L2 drift| %.2e (< 1e-6); "
                             "L4 drift %.2e; %.1f s", s.t, drift2, drift4, seconds_since(t0))};
}

Outcome energy_identity() {
  const auto t0 = std::chrono::steady_clock::now();
  auto residuals = [](double dt) {
    RunConfig c = standard_run();
    c.t_end = 0.1;
    c.fixed_dt = dt;
    RunOptions o;
    o.write_outputs = false;
    const RunResult r = run(c, o);
    std::vector<double> out;
    for (std::size_t i = 1; i < r.records.size(); ++i) out.push_back(r.records[i].energy_residual);
    return out;
  };
  const auto a = residuals(1e-3), b = residuals(5e-4);
  double worst = 0.0, min_ratio = kInf;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, a[i]);
    min_ratio = std::min(min_ratio, a[i] / b[i]);
  }
  const bool ok = a.size() == 10 && b.size() == 10 && worst < 1e-3 && min_ratio >= 3.0;
  return {ok, fmt("256^2, %zu samples on t in (0, 0.1]: max residual at dt = 1e-3 %.2e (< 1e-3), "
                  "min ratio residual(dt)/residual(dt/2) %.2f (>= 3), %.1f s",
                  a.size(), worst, min_ratio, seconds_since(t0))};
}

Outcome boundedness() {
  const auto t0 = std::chrono::steady_clock::now();
  RunConfig c = standard_run();
  c.t_end = 5.0;
  RunOptions o;
  o.write_outputs = false;
  const RunResult r = run(c, o);
  bool finite = true, monotone = true;
  double max_l2G = 0.0, max_ratio = 0.0;
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    const auto& rec = r.records[i];
    for (const auto& col : plot_columns()) finite = finite && std::isfinite(rec.*(col.field));
    if (i > 0) monotone = monotone && rec.diss_G_cum >= r.records[i - 1].diss_G_cum;
    max_l2G = std::max(max_l2G, rec.l2_G);
    max_ratio = std::max(max_ratio, rec.commutator_ratio);
  }
  const bool reached = !r.records.empty() && r.records.back().t == 5.0;
  const bool ok = !r.blew_up && reached && finite && monotone;
  return {ok, fmt("256^2, t = 0..5, %zu records: guard %s, all finite %s, diss_G_cum nondecreasing %s; "
                  "max |G|_2 %.4g, final cumulative dissipation %.4g, max commutator ratio %.4g, %.1f s",
                  r.records.size(), r.blew_up ? "TRIPPED" : "quiet", finite ? "yes" : "no", monotone ? "yes" : "no",
                  max_l2G, r.records.back().diss_G_cum, max_ratio, seconds_since(t0))};
}

Outcome region_formulas() {
  const auto t0 = std::chrono::steady_clock::now();
  auto branches = [](double a) { return std::min({2.0 - 2.0 * a, (8.0 / 3.0) * a - 2.0, 5.0 * a * (1.0 - a) / (11.0 - 10.0 * a)}); };
  const double e1 = std::abs(g_alpha(0.95) - branches(0.95)), e2 = std::abs(g_alpha(0.975) - branches(0.975));
  const double d1 = std::abs(g_alpha(0.95) - 0.1), d2 = std::abs(g_alpha(0.975) - 0.05);
  const NestingReport n = nesting_sweep(200, kDefaultQ);
  const double dt = seconds_since(t0);
  const bool ok = e1 <= 1e-15 && e2 <= 1e-15 && d1 <= 1e-15 && d2 <= 1e-15 && n.violations == 0 &&
                  n.main_admissible > 0 && dt < 1.0;
  return {ok, fmt("g(0.95) = %.17g, g(0.975) = %.17g (|err| %.1e, %.1e); sweep %d points, %d main-admissible, "
                  "%d nesting violations; %.3f s (< 1 s)", g_alpha(0.95), g_alpha(0.975), std::max(d1, e1),
                  std::max(d2, e2), n.points, n.main_admissible, n.violations, dt)};
}

Outcome twin_run() {
  const auto t0 = std::chrono::steady_clock::now();
  RunConfig c = standard_run();
  c.n1 = c.n2 = 128;
  c.t_end = 1.0;
  double zero_max = 0.0;
  for (const auto& s : twin_stability(c, 0.0)) zero_max = std::max(zero_max, s.Y);

  const double deltas[3] = {1e-4, 1e-6, 1e-8};
  double scaled[3];
  int breaches = 0, samples = 0;
  double tightest = kInf;
  for (int i = 0; i < 3; ++i) {
    const auto series = twin_stability(c, deltas[i]);
    scaled[i] = series.back().Y / deltas[i];
    if (i == 0) continue;
    for (const auto& s : series) {
      ++samples;
      breaches += !(s.Y <= s.majorant);
      tightest = std::min(tightest, s.majorant / s.Y);
    }
  }
  const double spread = *std::max_element(scaled, scaled + 3) / *std::min_element(scaled, scaled + 3);
  const bool ok = zero_max <= 1e-13 && spread < 50.0 && breaches == 0;
  return {ok, fmt("128^2, t = 1: delta = 0 gives max Y %.1e (<= 1e-13); Y(1)/delta = %.4g, %.4g, %.4g, spread %.3f "
                  "(< 50); Y <= majorant at %d/%d samples (min ratio %.3g), %.1f s",
                  zero_max, scaled[0], scaled[1], scaled[2], spread, samples - breaches, samples, tightest,
                  seconds_since(t0))};
}

Outcome spectral_convergence() {
  const auto t0 = std::chrono::steady_clock::now();
  auto solve = [](int n) {
    RunConfig c = standard_run();
    c.n1 = c.n2 = n;
    c.t_end = 0.5;
    c.fixed_dt = 2.5e-3;
    c.diag_interval = 0.5;
    c.init.k_cutoff = 20.0;
    RunOptions o;
    o.write_outputs = false;
    return run(c, o).final_state;
  };
  const SimState ref = solve(512);
  const Grid fine = ref.omega.grid;
  std::vector<double> err;
  for (int n : {64, 128, 256}) {
    const SimState s = solve(n);
    const double ew = spectral_l2_squared(resample(s.omega, fine) - ref.omega);
    const double et = spectral_l2_squared(resample(s.theta, fine) - ref.theta);
    err.push_back(std::sqrt(ew + et));
  }
  const double r1 = err[0] / err[1], r2 = err[1] / err[2];
  return {r1 >= 10.0 && r2 >= 10.0,
          fmt("t = 0.5, dt = 2.5e-3, L2 error vs 512^2: 64^2 %.3e, 128^2 %.3e, 256^2 %.3e; reductions %.3g, %.3g "
              "(>= 10), %.1f s", err[0], err[1], err[2], r1, r2, seconds_since(t0))};
}

Outcome determinism() {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  RunConfig c = standard_run();
  c.n1 = c.n2 = 128;
  c.t_end = 0.1;
  c.output_dir = a.string();
  run(c);
  c.output_dir = b.string();
  run(c);
  const std::string csv_a = slurp(a / "diagnostics.csv"), csv_b = slurp(b / "diagnostics.csv");
  const bool same_csv = !csv_a.empty() && csv_a == csv_b;

  const SimState s = load_snapshot((a / "snap_000001.bqs").string());
  save_snapshot(s, (a / "copy.bqs").string());
  const bool same_snap = slurp(a / "snap_000001.bqs") == slurp(a / "copy.bqs");
  const SimState r = load_snapshot((a / "copy.bqs").string());
  const bool same_fields =
      r.t == s.t && r.params == s.params &&
      std::memcmp(r.omega.coeffs.data(), s.omega.coeffs.data(), s.omega.coeffs.size() * sizeof(Complex)) == 0 &&
      std::memcmp(r.theta.coeffs.data(), s.theta.coeffs.data(), s.theta.coeffs.size() * sizeof(Complex)) == 0;

  SimState z{0.0, SpectralField(Grid(8)), SpectralField(Grid(8)), ParamSet{}};
  save_snapshot(z, (a / "zero.bqs").string());
  const auto zero_size = fs::file_size(a / "zero.bqs");
  fs::remove_all(a);
  fs::remove_all(b);
  const bool ok = same_csv && same_snap && same_fields && zero_size == 2124;
  return {ok, fmt("diagnostics.csv identical across two runs: %s (%zu bytes); snapshot round trip bit-exact: %s; "
                  "8x8 zero snapshot %ju bytes (2124)", same_csv ? "yes" : "no", csv_a.size(),
                  same_snap && same_fields ? "yes" : "no", static_cast<std::uintmax_t>(zero_size))};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> fn;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "operator oracle", operator_oracle},
      {2, "Littlewood-Paley exactness", littlewood_paley},
      {3, "Bernstein bounds", bernstein},
      {4, "maximum principle", maximum_principle},
      {5, "Euler-limit conservation", euler_limit},
      {6, "G energy identity", energy_identity},
      {7, "boundedness monitoring", boundedness},
      {8, "region formulas", region_formulas},
      {9, "twin-run stability", twin_run},
      {10, "spectral convergence", spectral_convergence},
      {11, "determinism and persistence", determinism},
  };
  std::vector<int> pick;
  for (int i = 1; i < argc; ++i) pick.push_back(std::atoi(argv[i]));

  int failed = 0, ran = 0;
  for (const auto& c : all) {
    if (!pick.empty() && std::find(pick.begin(), pick.end(), c.id) == pick.end()) continue;
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    ++ran;
    failed += !o.pass;
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
