// fbq: command-line front end for runs, twin runs, region checks, snapshot
// norms and the operator oracle. Failures print one line
//   error: <kind>: <message>
// on stderr and exit nonzero (2 usage/config, 3 blow-up, 1 anything else).

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

#include "fbq/besov.hpp"
#include "fbq/diagnostics.hpp"
#include "fbq/oracle.hpp"
#include "fbq/regions.hpp"
#include "fbq/runner.hpp"
#include "fbq/snapshot.hpp"

namespace {

struct Failure {
  const char* kind;
  std::string message;
  int code;
};

int fail(const Failure& f) {
  std::string msg = f.message;
  for (char& ch : msg)
    if (ch == '\n') ch = ' ';
  std::cerr << "error: " << f.kind << ": " << msg << "\n";
  return f.code;
}

double parse_exponent(const std::string& s) {
  if (s == "inf" || s == "infinity") return fbq::kInf;
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw fbq::Error("bad number '" + s + "'");
  return v;
}

fbq::BesovSpec parse_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 4) throw fbq::Error("--spec expects s,p,q,gamma");
  fbq::BesovSpec spec;
  try {
    spec.s = parse_exponent(parts[0]);
    spec.p = parse_exponent(parts[1]);
    spec.q = parse_exponent(parts[2]);
    spec.gamma_log = parse_exponent(parts[3]);
  } catch (const std::logic_error&) {
    throw fbq::Error("--spec expects s,p,q,gamma, got '" + text + "'");
  }
  spec.validate();
  return spec;
}

// Pads to a column width counted in code points, not bytes.
std::string pad(const std::string& s, std::size_t width) {
  std::size_t cols = 0;
  for (unsigned char ch : s) cols += (ch & 0xC0) != 0x80;
  return s + std::string(width > cols ? width - cols : 0, ' ');
}

void print_verdict(const fbq::RegionVerdict& v) {
  std::printf("%s: %s\n", fbq::theorem_name(v.theorem), v.admissible ? "admissible" : "not admissible");
  for (const auto& c : v.constraints)
    std::printf("  %s %-5s margin %+.17g\n", pad(c.name, 30).c_str(), c.satisfied ? "ok" : "FAIL", c.margin);
  if (!v.admissible) std::printf("  binding: %s\n", v.binding().name.c_str());
}

int cmd_run(const std::string& path) {
  const fbq::RunConfig cfg = fbq::load_config(path);
  const fbq::RunResult res = fbq::run(cfg);
  std::printf("steps %ld\nrecords %zu\nsnapshots %zu\noutput %s\n", res.steps, res.records.size(),
              res.snapshots.size(), res.output_dir.c_str());
  if (res.blew_up) return fail({"blowup", res.blowup_report, 3});
  const auto& last = res.records.back();
  std::printf("t %.17g\nl2_theta %.17g\nl2_G %.17g\ndiss_G_cum %.17g\n", last.t, last.l2_theta, last.l2_G,
              last.diss_G_cum);
  return 0;
}

int cmd_twin(const std::string& path, double delta, double C) {
  const fbq::RunConfig cfg = fbq::load_config(path);
  const auto series = fbq::twin_stability(cfg, delta, C);
  std::printf("t,Y,majorant,D1,D2\n");
  for (const auto& s : series) std::printf("%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t, s.Y, s.majorant, s.D1, s.D2);
  return 0;
}

int cmd_regions(double alpha, std::optional<double> beta, std::optional<double> q, bool sweep) {
  std::printf("g(alpha) = %.17g\n", fbq::g_alpha(alpha));
  std::printf("beta interval (%.17g, %.17g) %s\n", 1.0 - alpha, fbq::g_alpha(alpha),
              fbq::g_alpha(alpha) > 1.0 - alpha ? "nonempty" : "empty");
  if (beta)
    for (auto id : {fbq::TheoremId::main, fbq::TheoremId::G_L2, fbq::TheoremId::G_Lq, fbq::TheoremId::G_Besov})
      print_verdict(fbq::check_admissible(alpha, *beta, q, id));
  if (sweep) {
    const auto r = fbq::nesting_sweep(200, q.value_or(fbq::kDefaultQ));
    std::printf("sweep points %d main_admissible %d nesting_violations %d\n", r.points, r.main_admissible,
                r.violations);
    std::printf("nonempty threshold alpha = %.17g\n", fbq::nonempty_threshold());
  }
  return 0;
}

int cmd_norms(const std::string& path, const std::string& spec_text, bool homogeneous, const std::string& field) {
  const fbq::SimState s = fbq::load_snapshot(path);
  fbq::BesovSpec spec = parse_spec(spec_text);
  spec.homogeneous = homogeneous;
  fbq::SpectralField f;
  if (field == "omega") f = s.omega;
  else if (field == "theta") f = s.theta;
  else f = fbq::compute_G(s);
  std::printf("%.17g\n", fbq::besov_norm(f, spec));
  return 0;
}

int cmd_oracle(const std::string& corrupt) {
  fbq::OracleOptions o;
  o.corrupt = corrupt;
  const auto rep = fbq::oracle_check(o);
  for (const auto& e : rep.entries)
    std::printf("%-18s %-4s max_abs_error %.3e\n", e.name.c_str(), e.passed ? "PASS" : "FAIL", e.max_error);
  std::printf("%zu checks, tolerance %.0e: %s\n", rep.entries.size(), rep.tolerance, rep.passed() ? "PASS" : "FAIL");
  if (!rep.passed()) return fail({"oracle", "operator mismatch above tolerance", 1});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional Boussinesq pseudospectral simulator and Besov diagnostics"};
  app.require_subcommand(1);

  std::string run_config;
  auto* run = app.add_subcommand("run", "Run a configured simulation");
  run->add_option("config", run_config, "Config file")->required();

  std::string twin_config;
  double delta = 0.0, C = 1.0;
  auto* twin = app.add_subcommand("twin", "Twin-run stability functional and Osgood majorant");
  twin->add_option("config", twin_config, "Config file")->required();
  twin->add_option("--delta", delta, "Perturbation amplitude")->required()->check(CLI::NonNegativeNumber);
  twin->add_option("--C", C, "Osgood constant")->check(CLI::PositiveNumber);

  double alpha = 0.0;
  std::optional<double> beta, q;
  bool sweep = false;
  auto* regions = app.add_subcommand("regions", "Evaluate parameter windows");
  regions->add_option("--alpha", alpha, "alpha in (0,1)")->required();
  regions->add_option("--beta", beta, "beta");
  regions->add_option("--q", q, "Lebesgue exponent for the q-dependent windows");
  regions->add_flag("--sweep", sweep, "200x200 nesting sweep and emptiness threshold");

  std::string snap, spec_text, field = "omega";
  bool homogeneous = false;
  auto* norms = app.add_subcommand("norms", "Besov norm of a snapshot field");
  norms->add_option("snapshot", snap, "Snapshot file")->required();
  norms->add_option("--spec", spec_text, "s,p,q,gamma (p, q may be inf)")->required();
  norms->add_option("--field", field, "omega, theta or G")->check(CLI::IsMember({"omega", "theta", "G"}));
  norms->add_flag("--homogeneous", homogeneous, "Drop the low-frequency block");

  std::string corrupt;
  auto* oracle = app.add_subcommand("oracle", "Compare operators against a brute-force DFT");
  oracle->add_option("--corrupt", corrupt, "Perturb one check (test hook)")
      ->check(CLI::IsMember(fbq::oracle_check_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail({"usage", e.what(), 2});
  }

  try {
    if (*run) return cmd_run(run_config);
    if (*twin) return cmd_twin(twin_config, delta, C);
    if (*regions) return cmd_regions(alpha, beta, q, sweep);
    if (*norms) return cmd_norms(snap, spec_text, homogeneous, field);
    if (*oracle) return cmd_oracle(corrupt);
  } catch (const fbq::BlowUpError& e) {
    return fail({"blowup", e.what(), 3});
  } catch (const fbq::Error& e) {
    const std::string m = e.what();
    return fail({m.rfind("config", 0) == 0 ? "config" : "runtime", m, m.rfind("config", 0) == 0 ? 2 : 1});
  } catch (const std::exception& e) {
    return fail({"runtime", e.what(), 1});
  }
  return 0;
}
