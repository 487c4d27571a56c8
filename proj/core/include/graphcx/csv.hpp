#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "graphcx/ensemble.hpp"
#include "graphcx/measures.hpp"

namespace graphcx {

/// id,n,links,aut_order,omega,C,C_z,odc,compression_error,source
inline constexpr std::string_view kCsvHeader = "id,n,links,aut_order,omega,C,C_z,odc,compression_error,source";

/// printf("%.6g"); empty for a missing value.
std::string format_number(double value);
std::string format_number(std::optional<double> value);

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const ExperimentRow& row);
/// Report row; optional fields stay empty.
void write_csv_row(std::ostream& out, std::string_view id, const ComplexityReport& report, std::string_view source);
void write_experiment_csv(std::ostream& out, std::span<const ExperimentRow> rows);

}  // namespace graphcx
