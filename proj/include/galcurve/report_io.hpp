#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "galcurve/checks.hpp"

namespace galcurve {

/// Column-oriented numeric output shared by the CSV and JSON writers so both
/// encodings carry identical values. Missing cells are empty in CSV and null
/// in JSON.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;
};

/// Header row, then one line per row; '\n' line endings.
void write_csv(std::ostream& os, const Table& table);

/// Array of objects keyed by column name.
nlohmann::json table_to_json(const Table& table);

/// {"theorem", "tolerance", "max_abs_deviation", "pass", "grid", "samples",
/// "notes"}; each sample is {"s", "deviation", <fields>...}.
nlohmann::json report_to_json(const CheckReport& report);

/// One row per sample: s, deviation and the sample fields.
Table report_to_table(const CheckReport& report);

}  // namespace galcurve
