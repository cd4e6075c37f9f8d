#pragma once

// diagnostics.csv (13 fixed columns, 17 significant digits) and two-column
// `t value` plot-data files, one per recorded quantity.

#include <string>
#include <vector>

#include "fbq/diagnostics.hpp"

namespace fbq {

struct Column {
  const char* name;
  double DiagnosticsRecord::*field;
};

/// The diagnostics.csv schema, in order.
const std::vector<Column>& csv_columns();
/// Every quantity that gets a `<name>.dat` plot file.
const std::vector<Column>& plot_columns();

std::string csv_header();
std::string format_csv(const std::vector<DiagnosticsRecord>& records);

/// Writes diagnostics.csv and the plot files into dir (created if missing).
/// Returns the paths written.
std::vector<std::string> emit_outputs(const std::vector<DiagnosticsRecord>& records, const std::string& dir);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::vector<double> column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text);

/// Reads a two-column plot-data file.
std::pair<std::vector<double>, std::vector<double>> read_plot_data(const std::string& path);

}  // namespace fbq
