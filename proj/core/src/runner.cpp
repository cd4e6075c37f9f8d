#include "fbq/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fbq/outputs.hpp"
#include "fbq/snapshot.hpp"

namespace fbq {

namespace {

void set_mode(SpectralField& f, const ModeSpec& m) {
  Complex v = m.value;
  const bool self_mirror = Grid::position(-m.k1, f.grid.n1()) == Grid::position(m.k1, f.grid.n1()) &&
                           Grid::position(-m.k2, f.grid.n2()) == Grid::position(m.k2, f.grid.n2());
  if (self_mirror) v = Complex(v.real(), 0.0);
  f.mode(m.k1, m.k2) = v;
  f.mode(-m.k1, -m.k2) = std::conj(v);
}

double omega_max(const SimState& s) { return lp_norm(inverse(s.omega), kInf); }

std::string snapshot_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snap_%06zu.bqs", index);
  return buf;
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("run: cannot write " + p.string());
  f << text;
}

}  // namespace

SimState initial_state(const RunConfig& c) {
  c.validate();
  const Grid g = c.grid();
  SimState s;
  s.params = c.params;
  s.omega = SpectralField(g);
  s.theta = SpectralField(g);
  switch (c.init.kind) {
    case InitKind::random_bandlimited:
      s.omega = random_bandlimited(g, c.init.seed, c.init.slope, c.init.k_cutoff, c.init.omega_amplitude);
      s.theta = random_bandlimited(g, c.init.seed + kThetaSeedOffset, c.init.slope, c.init.k_cutoff,
                                   c.init.theta_amplitude);
      break;
    case InitKind::explicit_modes:
      for (const auto& m : c.init.modes) set_mode(m.omega ? s.omega : s.theta, m);
      break;
    case InitKind::file: {
      SimState f = load_snapshot(c.init.file);
      if (!(f.omega.grid == g))
        throw Error("run: snapshot grid " + std::to_string(f.omega.grid.n1()) + "x" +
                    std::to_string(f.omega.grid.n2()) + " does not match the configured grid");
      s.t = f.t;
      s.omega = std::move(f.omega);
      s.theta = std::move(f.theta);
      break;
    }
  }
  return s;
}

DynamicsOptions dynamics_options(const RunConfig& c) { return {c.advection, c.allow_inviscid}; }

DiagnosticsSettings diagnostics_settings(const RunConfig& c) {
  DiagnosticsSettings d;
  d.besov_eps = c.besov_eps;
  d.lq = c.lq;
  d.lp_omega = c.lp_omega;
  return d;
}

RunResult run(const RunConfig& c, const RunOptions& opts) {
  RunResult res;
  SimState s = initial_state(c);
  const DynamicsOptions dopts = dynamics_options(c);
  const Dynamics dyn(c.grid(), c.params, dopts);
  Recorder rec(diagnostics_settings(c), dopts);

  const std::filesystem::path dir = resolve_output_dir(c);
  if (opts.write_outputs) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error("run: cannot create " + dir.string() + ": " + ec.message());
    write_text(dir / "config_used.txt", to_text(c));
  }
  res.output_dir = dir.string();

  auto snapshot = [&](const SimState& st) {
    if (!opts.write_outputs || !c.write_snapshots) return;
    const auto path = (dir / snapshot_name(res.snapshots.size())).string();
    save_snapshot(st, path);
    res.snapshots.push_back(path);
  };

  const double ref = omega_max(s);
  const double limit = c.guard_factor * (ref > 0.0 ? ref : 1.0);
  rec.record(s);
  snapshot(s);

  const double t0 = s.t;
  double next_snap = c.snap_interval;
  const auto intervals = static_cast<long>(std::ceil(c.t_end / c.diag_interval - 1e-9));
  SimState prev = s;
  try {
    for (long m = 1; m <= intervals; ++m) {
      const double target = t0 + std::min(c.t_end, m * c.diag_interval);
      while (s.t < target) {
        const double remaining = target - s.t;
        const double cap = c.fixed_dt > 0.0 ? c.fixed_dt : std::min(cfl_dt(s, c.cfl_safety), c.max_dt);
        const double n = std::max(1.0, std::ceil(remaining / cap - 1e-9));
        prev = s;
        s = dyn.step(s, {c.scheme, remaining / n});
        if (n == 1.0) s.t = target;
        ++res.steps;
        const double wmax = omega_max(s);
        if (!(wmax <= limit)) {
          char buf[160];
          std::snprintf(buf, sizeof buf, "vorticity guard tripped at t = %.17g: |omega|_inf = %.6g > %.6g", s.t, wmax,
                        limit);
          throw BlowUpError(buf);
        }
        if (opts.on_step) opts.on_step(prev, s);
      }
      rec.record(s, &prev);
      const bool last = m == intervals;
      if (s.t - t0 >= next_snap - 1e-9 * c.snap_interval || last) {
        snapshot(s);
        while (next_snap <= s.t - t0 + 1e-9 * c.snap_interval) next_snap += c.snap_interval;
      }
    }
  } catch (const BlowUpError& e) {
    res.blew_up = true;
    char buf[96];
    std::snprintf(buf, sizeof buf, "; last valid record at t = %.17g", rec.records().back().t);
    res.blowup_report = e.what() + std::string(buf);
  }

  res.records = rec.records();
  res.final_state = s;
  if (opts.write_outputs) {
    emit_outputs(res.records, dir.string());
    if (res.blew_up) write_text(dir / "blowup.txt", res.blowup_report + "\n");
  }
  return res;
}

std::vector<TwinSample> twin_stability(const RunConfig& c, double delta, double C) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw Error("twin: delta must be >= 0");
  const SimState a = initial_state(c);
  SimState b = a;
  const Grid g = c.grid();
  const auto& in = c.init;
  const SpectralField eta = random_bandlimited(g, in.seed + kTwinThetaSeedOffset, in.slope, in.k_cutoff, 1.0);
  const SpectralField zeta = random_bandlimited(g, in.seed + kTwinOmegaSeedOffset, in.slope, in.k_cutoff, 1.0);
  b.theta += delta * eta;
  b.omega += delta * zeta;

  TwinOptions o;
  o.C = C;
  o.cfl_safety = c.cfl_safety;
  o.max_dt = c.max_dt;
  o.fixed_dt = c.fixed_dt;
  o.diag_interval = c.diag_interval;
  o.t_end = c.t_end;
  o.guard_factor = c.guard_factor;
  o.dynamics = dynamics_options(c);
  return twin_stability(a, b, o);
}

}  // namespace fbq
