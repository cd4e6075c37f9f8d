#include "fbq/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace fbq {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw Error("config:" + std::to_string(line) + ": " + msg);
}

double to_double(const std::string& v, int line, const std::string& key) {
  double x = 0.0;
  const char* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || p != end || !std::isfinite(x)) fail(line, "unparsable value for " + key + ": '" + v + "'");
  return x;
}

long long to_integer(const std::string& v, int line, const std::string& key) {
  long long x = 0;
  const char* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || p != end) fail(line, "unparsable integer for " + key + ": '" + v + "'");
  return x;
}

bool to_bool(const std::string& v, int line, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  fail(line, "unparsable boolean for " + key + ": '" + v + "'");
}

int to_size(const std::string& v, int line, const std::string& key) {
  const long long n = to_integer(v, line, key);
  if (n < 8 || n > (1 << 16)) fail(line, key + " must be a power of two in [8, 65536]");
  return static_cast<int>(n);
}

// "omega k1 k2 re im; theta k1 k2 re im; ..."
std::vector<ModeSpec> to_modes(const std::string& v, int line) {
  std::vector<ModeSpec> out;
  std::stringstream all(v);
  std::string item;
  while (std::getline(all, item, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    std::istringstream is(item);
    std::string field;
    ModeSpec m;
    double re = 0.0, im = 0.0;
    if (!(is >> field >> m.k1 >> m.k2 >> re >> im) || !(is >> std::ws).eof())
      fail(line, "mode entries read 'omega|theta k1 k2 re im': '" + item + "'");
    if (field == "omega") m.omega = true;
    else if (field == "theta") m.omega = false;
    else fail(line, "mode field must be omega or theta: '" + field + "'");
    m.value = Complex(re, im);
    out.push_back(m);
  }
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string&, int)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto num = [&t](const std::string& key, double RunConfig::*field) {
      t[key] = [key, field](RunConfig& c, const std::string& v, int l) { c.*field = to_double(v, l, key); };
    };
    auto param = [&t](const std::string& key, double ParamSet::*field) {
      t[key] = [key, field](RunConfig& c, const std::string& v, int l) { c.params.*field = to_double(v, l, key); };
    };
    auto init_num = [&t](const std::string& key, double InitSpec::*field) {
      t[key] = [key, field](RunConfig& c, const std::string& v, int l) { c.init.*field = to_double(v, l, key); };
    };
    auto flag = [&t](const std::string& key, bool RunConfig::*field) {
      t[key] = [key, field](RunConfig& c, const std::string& v, int l) { c.*field = to_bool(v, l, key); };
    };

    t["n"] = [](RunConfig& c, const std::string& v, int l) { c.n1 = c.n2 = to_size(v, l, "n"); };
    t["n1"] = [](RunConfig& c, const std::string& v, int l) { c.n1 = to_size(v, l, "n1"); };
    t["n2"] = [](RunConfig& c, const std::string& v, int l) { c.n2 = to_size(v, l, "n2"); };
    param("alpha", &ParamSet::alpha);
    param("beta", &ParamSet::beta);
    param("sigma", &ParamSet::sigma);
    param("gamma", &ParamSet::gamma);
    param("nu", &ParamSet::nu);
    param("kappa", &ParamSet::kappa);
    num("t_end", &RunConfig::t_end);
    num("max_dt", &RunConfig::max_dt);
    num("fixed_dt", &RunConfig::fixed_dt);
    num("cfl_safety", &RunConfig::cfl_safety);
    num("diag_interval", &RunConfig::diag_interval);
    num("snap_interval", &RunConfig::snap_interval);
    num("besov_eps", &RunConfig::besov_eps);
    num("lq", &RunConfig::lq);
    num("lp_omega", &RunConfig::lp_omega);
    num("guard_factor", &RunConfig::guard_factor);
    flag("experimental_beta", &RunConfig::experimental_beta);
    flag("allow_inviscid", &RunConfig::allow_inviscid);
    flag("advection", &RunConfig::advection);
    flag("write_snapshots", &RunConfig::write_snapshots);
    init_num("slope", &InitSpec::slope);
    init_num("k_cutoff", &InitSpec::k_cutoff);
    init_num("omega_amplitude", &InitSpec::omega_amplitude);
    init_num("theta_amplitude", &InitSpec::theta_amplitude);
    t["seed"] = [](RunConfig& c, const std::string& v, int l) {
      const long long s = to_integer(v, l, "seed");
      if (s < 0) fail(l, "seed must be >= 0");
      c.init.seed = static_cast<std::uint64_t>(s);
    };
    t["init"] = [](RunConfig& c, const std::string& v, int l) {
      if (v == "random_bandlimited") c.init.kind = InitKind::random_bandlimited;
      else if (v == "explicit_modes") c.init.kind = InitKind::explicit_modes;
      else if (v == "file") c.init.kind = InitKind::file;
      else fail(l, "init must be random_bandlimited, explicit_modes or file: '" + v + "'");
    };
    t["modes"] = [](RunConfig& c, const std::string& v, int l) { c.init.modes = to_modes(v, l); };
    t["init_file"] = [](RunConfig& c, const std::string& v, int) { c.init.file = v; };
    t["output_dir"] = [](RunConfig& c, const std::string& v, int) { c.output_dir = v; };
    t["scheme"] = [](RunConfig& c, const std::string& v, int l) {
      if (v == "if_rk4") c.scheme = SchemeKind::if_rk4;
      else if (v == "if_euler") c.scheme = SchemeKind::if_euler;
      else fail(l, "scheme must be if_rk4 or if_euler: '" + v + "'");
    };
    return t;
  }();
  return table;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::string fmt_short(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

}  // namespace

void RunConfig::validate() const {
  try {
    Grid g(n1, n2);
    params.validate(allow_inviscid);
  } catch (const Error& e) {
    throw Error(std::string("config: ") + e.what());
  }
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw Error(std::string("config: ") + what + " must be positive");
  };
  positive(t_end, "t_end");
  positive(max_dt, "max_dt");
  positive(diag_interval, "diag_interval");
  positive(snap_interval, "snap_interval");
  positive(besov_eps, "besov_eps");
  positive(guard_factor, "guard_factor");
  positive(init.k_cutoff, "k_cutoff");
  if (fixed_dt < 0.0) throw Error("config: fixed_dt must be >= 0");
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) throw Error("config: cfl_safety must lie in (0,1]");
  if (!(lq >= 1.0) || !(lp_omega >= 1.0)) throw Error("config: lq and lp_omega must be >= 1");
  if (init.omega_amplitude < 0.0 || init.theta_amplitude < 0.0) throw Error("config: amplitudes must be >= 0");
  if (init.kind == InitKind::file && init.file.empty()) throw Error("config: init = file needs init_file");
  for (const auto& m : init.modes)
    if (2 * std::abs(m.k1) >= n1 || 2 * std::abs(m.k2) >= n2)
      throw Error("config: mode (" + std::to_string(m.k1) + ", " + std::to_string(m.k2) + ") outside the grid");

  if (!experimental_beta) {
    const RegionVerdict v = check_admissible(params.alpha, params.beta, std::nullopt, TheoremId::main);
    if (!v.admissible) {
      const Constraint& b = v.binding();
      throw Error("config: (α, β) = (" + fmt_short(params.alpha) + ", " + fmt_short(params.beta) +
                  ") not admissible: binding constraint " + b.name + " (margin " + fmt_short(b.margin) +
                  "); set experimental_beta = true to run outside the proven region");
    }
  }
}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(std::string_view(raw).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) fail(line, "unknown key '" + key + "'");
    if (!seen.insert(key).second) fail(line, "repeated key '" + key + "'");
    if (value.empty()) fail(line, "missing value for " + key);
    it->second(c, value, line);
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("config: cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string to_text(const RunConfig& c) {
  std::ostringstream os;
  auto kv = [&os](const char* k, const std::string& v) { os << k << " = " << v << "\n"; };
  auto b = [](bool x) { return std::string(x ? "true" : "false"); };
  kv("n1", std::to_string(c.n1));
  kv("n2", std::to_string(c.n2));
  kv("alpha", fmt(c.params.alpha));
  kv("beta", fmt(c.params.beta));
  kv("sigma", fmt(c.params.sigma));
  kv("gamma", fmt(c.params.gamma));
  kv("nu", fmt(c.params.nu));
  kv("kappa", fmt(c.params.kappa));
  kv("t_end", fmt(c.t_end));
  kv("max_dt", fmt(c.max_dt));
  kv("fixed_dt", fmt(c.fixed_dt));
  kv("cfl_safety", fmt(c.cfl_safety));
  kv("diag_interval", fmt(c.diag_interval));
  kv("snap_interval", fmt(c.snap_interval));
  switch (c.init.kind) {
    case InitKind::random_bandlimited: kv("init", "random_bandlimited"); break;
    case InitKind::explicit_modes: kv("init", "explicit_modes"); break;
    case InitKind::file: kv("init", "file"); break;
  }
  kv("seed", std::to_string(c.init.seed));
  kv("slope", fmt(c.init.slope));
  kv("k_cutoff", fmt(c.init.k_cutoff));
  kv("omega_amplitude", fmt(c.init.omega_amplitude));
  kv("theta_amplitude", fmt(c.init.theta_amplitude));
  if (!c.init.modes.empty()) {
    std::string m;
    for (const auto& e : c.init.modes) {
      if (!m.empty()) m += "; ";
      m += std::string(e.omega ? "omega " : "theta ") + std::to_string(e.k1) + " " + std::to_string(e.k2) + " " +
           fmt(e.value.real()) + " " + fmt(e.value.imag());
    }
    kv("modes", m);
  }
  if (!c.init.file.empty()) kv("init_file", c.init.file);
  kv("scheme", c.scheme == SchemeKind::if_rk4 ? "if_rk4" : "if_euler");
  kv("advection", b(c.advection));
  kv("besov_eps", fmt(c.besov_eps));
  kv("lq", fmt(c.lq));
  kv("lp_omega", fmt(c.lp_omega));
  kv("experimental_beta", b(c.experimental_beta));
  kv("allow_inviscid", b(c.allow_inviscid));
  kv("guard_factor", fmt(c.guard_factor));
  if (!c.output_dir.empty()) kv("output_dir", c.output_dir);
  kv("write_snapshots", b(c.write_snapshots));
  return os.str();
}

std::string resolve_output_dir(const RunConfig& c) {
  if (!c.output_dir.empty()) return c.output_dir;
  if (const char* env = std::getenv("BQS_OUTPUT_DIR"); env && *env) return env;
  return "fbq_out";
}

}  // namespace fbq
