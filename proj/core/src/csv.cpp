#include "graphcx/csv.hpp"

#include <cstdio>
#include <ostream>

namespace graphcx {

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string format_number(std::optional<double> value) { return value ? format_number(*value) : std::string(); }

void write_csv_header(std::ostream& out) { out << kCsvHeader << '\n'; }

void write_csv_row(std::ostream& out, const ExperimentRow& row) {
  out << row.id << ',' << row.n << ',' << row.links << ',' << row.aut_order << ',' << row.omega << ','
      << format_number(row.C) << ',' << format_number(row.C_z) << ',' << format_number(row.odc) << ','
      << format_number(row.compression_error) << ',' << to_string(row.source) << '\n';
}

void write_csv_row(std::ostream& out, std::string_view id, const ComplexityReport& r, std::string_view source) {
  out << id << ',' << r.n << ',' << r.links << ',' << r.aut_order << ',' << r.omega << ',' << format_number(r.C) << ','
      << format_number(r.C_z) << ',' << format_number(r.odc) << ',' << format_number(r.compression_error) << ','
      << source << '\n';
}

void write_experiment_csv(std::ostream& out, std::span<const ExperimentRow> rows) {
  write_csv_header(out);
  for (const auto& r : rows) write_csv_row(out, r);
}

}  // namespace graphcx
