#include "fbq/outputs.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace fbq {

namespace {

using R = DiagnosticsRecord;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("outputs: cannot open " + path + " for writing");
  f << text;
  if (!f) throw Error("outputs: write failed for " + path);
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("outputs: cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

double parse_number(const std::string& s) {
  double x = 0.0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, x);
  if (ec != std::errc() || p != end) throw Error("outputs: bad number '" + s + "'");
  return x;
}

std::ostream& digits(std::ostream& os) { return os << std::setprecision(17); }

}  // namespace

const std::vector<Column>& csv_columns() {
  static const std::vector<Column> cols = {
      {"t", &R::t},
      {"l2_theta", &R::l2_theta},
      {"l4_theta", &R::l4_theta},
      {"linf_theta", &R::linf_theta},
      {"l2_G", &R::l2_G},
      {"diss_G_cum", &R::diss_G_cum},
      {"lq_G", &R::lq_G},
      {"lp_omega", &R::lp_omega},
      {"besov_omega_0gamma", &R::besov_omega_0gamma},
      {"besov_theta_hs", &R::besov_theta_hs},
      {"energy_residual", &R::energy_residual},
      {"commutator_ratio", &R::commutator_ratio},
      {"cum_l1t_besov_omega", &R::cum_l1t_besov_omega},
  };
  return cols;
}

const std::vector<Column>& plot_columns() {
  static const std::vector<Column> cols = [] {
    std::vector<Column> c(csv_columns().begin() + 1, csv_columns().end());
    c.insert(c.end(), {
                          {"diss_G", &R::diss_G},
                          {"lr_G", &R::lr_G},
                          {"cum_l1t_lr_G", &R::cum_l1t_lr_G},
                          {"l2_omega", &R::l2_omega},
                          {"linf_omega", &R::linf_omega},
                          {"besov_theta_inf1", &R::besov_theta_inf1},
                          {"besov_theta_d1", &R::besov_theta_d1},
                          {"besov_G", &R::besov_G},
                          {"cum_l1t_besov_G", &R::cum_l1t_besov_G},
                      });
    return c;
  }();
  return cols;
}

std::string csv_header() {
  std::string h;
  for (const auto& c : csv_columns()) {
    if (!h.empty()) h += ',';
    h += c.name;
  }
  return h;
}

std::string format_csv(const std::vector<DiagnosticsRecord>& records) {
  std::ostringstream os;
  os << csv_header() << '\n' << digits;
  for (const auto& r : records) {
    bool first = true;
    for (const auto& c : csv_columns()) {
      if (!first) os << ',';
      os << r.*(c.field);
      first = false;
    }
    os << '\n';
  }
  return os.str();
}

std::vector<std::string> emit_outputs(const std::vector<DiagnosticsRecord>& records, const std::string& dir) {
  if (records.empty()) throw Error("outputs: no records to write");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("outputs: cannot create " + dir + ": " + ec.message());
  const std::filesystem::path root(dir);
  std::vector<std::string> written;

  const std::string csv = (root / "diagnostics.csv").string();
  write_file(csv, format_csv(records));
  written.push_back(csv);

  for (const auto& c : plot_columns()) {
    std::ostringstream os;
    os << "# t " << c.name << '\n' << digits;
    for (const auto& r : records) os << r.t << ' ' << r.*(c.field) << '\n';
    const std::string path = (root / (std::string(c.name) + ".dat")).string();
    write_file(path, os.str());
    written.push_back(path);
  }
  return written;
}

std::vector<double> CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] != name) continue;
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.at(i));
    return out;
  }
  throw Error("outputs: no column '" + name + "'");
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (first) {
      t.header = cells;
      first = false;
      continue;
    }
    if (cells.size() != t.header.size()) throw Error("outputs: ragged csv row");
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(parse_number(c));
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable read_csv(const std::string& path) { return parse_csv(slurp(path)); }

std::pair<std::vector<double>, std::vector<double>> read_plot_data(const std::string& path) {
  std::istringstream in(slurp(path));
  std::pair<std::vector<double>, std::vector<double>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string a, b;
    if (!(ls >> a >> b)) throw Error("outputs: bad plot-data line in " + path);
    out.first.push_back(parse_number(a));
    out.second.push_back(parse_number(b));
  }
  return out;
}

}  // namespace fbq
